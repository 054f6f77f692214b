use std::collections::BTreeMap;
use std::io::Write;
use std::str::FromStr;

use goldbach_core::prime::ClassCounts;
use goldbach_core::Anomaly;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::job::VerifyJob;

pub const CSV_HEADER: [&str; 7] = [
    "task",
    "lo",
    "hi",
    "verified",
    "anomalies",
    "max_min_offset",
    "elapsed_ms",
];

/// Largest per-instance minimal witness seen, and the first instance that hit it.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessStats {
    pub max_min_offset: Option<u64>,
    pub argmax: Option<u64>,
}

impl WitnessStats {
    pub(crate) fn observe(&mut self, instance: u64, value: u64) {
        if self.max_min_offset.is_none_or(|m| value > m) {
            self.max_min_offset = Some(value);
            self.argmax = Some(instance);
        }
    }

    /// Folds in the stats of a later range; earlier instances win ties.
    pub(crate) fn merge(&mut self, later: &WitnessStats) {
        if let (Some(v), Some(at)) = (later.max_min_offset, later.argmax) {
            self.observe(at, v);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChunkSummary {
    pub index: u64,
    pub lo: u64,
    pub hi: u64,
    pub verified: u64,
    pub anomalies: u64,
    pub stats: WitnessStats,
    pub counters: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub census: Option<ClassCounts>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeReport {
    pub job: VerifyJob,
    pub verified_count: u64,
    pub anomaly_count: u64,
    pub min_witness_stats: WitnessStats,
    /// Task-specific tallies, e.g. `confirmed` / `vacuous` for `t6`.
    pub counters: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub census: Option<ClassCounts>,
    pub complete: bool,
    /// First integer of the next unprocessed chunk when `complete` is false.
    pub resume_cursor: Option<u64>,
    pub elapsed_ms: u64,
    pub anomalies: Vec<Anomaly>,
    pub per_chunk: Vec<ChunkSummary>,
}

impl RangeReport {
    pub(crate) fn assemble(
        job: VerifyJob,
        per_chunk: Vec<ChunkSummary>,
        anomalies: Vec<Anomaly>,
        elapsed_ms: u64,
    ) -> Self {
        let mut stats = WitnessStats::default();
        let mut counters = BTreeMap::new();
        let mut census: Option<ClassCounts> = None;
        let (mut verified, mut anomalous) = (0, 0);
        for c in &per_chunk {
            verified += c.verified;
            anomalous += c.anomalies;
            stats.merge(&c.stats);
            for (k, v) in &c.counters {
                *counters.entry(k.clone()).or_insert(0) += v;
            }
            if let Some(cc) = &c.census {
                census.get_or_insert_with(ClassCounts::default).add(cc);
            }
        }
        let done = per_chunk.len() as u64;
        let complete = done == job.chunk_count();
        let resume_cursor = (!complete).then(|| job.chunk_bounds(done).0);
        RangeReport {
            job,
            verified_count: verified,
            anomaly_count: anomalous,
            min_witness_stats: stats,
            counters,
            census,
            complete,
            resume_cursor,
            elapsed_ms,
            anomalies,
            per_chunk,
        }
    }

    pub fn has_anomalies(&self) -> bool {
        self.anomaly_count > 0
    }

    /// Copy with every wall-clock field zeroed.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        for c in &mut r.per_chunk {
            c.elapsed_ms = 0;
        }
        r.anomalies = r
            .anomalies
            .into_iter()
            .map(Anomaly::without_timing)
            .collect();
        r
    }

    /// Timing-free copy without the chunk breakdown; invariant under chunk size.
    pub fn body(&self) -> Self {
        let mut r = self.without_timing();
        r.per_chunk.clear();
        r.job.chunk = 0;
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?} (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    /// Emit elapsed times and anomaly timestamps; off for byte-stable output.
    pub timing: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self { timing: true }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    task: &'a str,
    lo: u64,
    hi: u64,
    verified: u64,
    anomalies: u64,
    max_min_offset: Option<u64>,
    elapsed_ms: u64,
}

/// Serialises one report; see [`emit_reports`].
pub fn emit_report(report: &RangeReport, format: Format, opts: ReportOptions) -> Result<Vec<u8>> {
    match format {
        Format::Csv => emit_reports(std::slice::from_ref(report), format, opts),
        Format::Json => {
            let report = if opts.timing {
                report.clone()
            } else {
                report.without_timing()
            };
            let mut out = serde_json::to_vec_pretty(&report)?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

/// CSV: a fixed header plus one row per report. JSON: an array of reports.
pub fn emit_reports(
    reports: &[RangeReport],
    format: Format,
    opts: ReportOptions,
) -> Result<Vec<u8>> {
    let reports: Vec<RangeReport> = reports
        .iter()
        .map(|r| {
            if opts.timing {
                r.clone()
            } else {
                r.without_timing()
            }
        })
        .collect();
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(&reports)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for r in &reports {
                w.serialize(CsvRow {
                    task: r.job.task.name(),
                    lo: r.job.lo,
                    hi: r.job.hi,
                    verified: r.verified_count,
                    anomalies: r.anomaly_count,
                    max_min_offset: r.min_witness_stats.max_min_offset,
                    elapsed_ms: r.elapsed_ms,
                })?;
            }
            Ok(w.into_inner().map_err(|e| e.into_error())?)
        }
    }
}

/// Writes the serialised report to `sink`.
pub fn write_report(
    mut sink: impl Write,
    report: &RangeReport,
    format: Format,
    opts: ReportOptions,
) -> Result<()> {
    sink.write_all(&emit_report(report, format, opts)?)?;
    sink.flush()?;
    Ok(())
}
