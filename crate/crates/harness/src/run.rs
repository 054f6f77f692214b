use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use goldbach_core::conjecture::{
    conjecture2_witness, conjecture3_witness, conjecture4_verify, Sign,
};
use goldbach_core::partition::{closest_midpoint, verify_goldbach};
use goldbach_core::prime::{sieve_range, ClassCounts, PrimeTable};
use goldbach_core::progression::{
    audit_collapse, coprime_witness, first_offset_witness, CollapseVerdict,
};
use goldbach_core::{
    classify_mod4, Anomaly, AnomalyKind, Error as CoreError, Outcome, ResidueClass,
};
use rayon::prelude::*;

use crate::error::{HarnessError, Result};
use crate::job::{Task, VerifyJob};
use crate::report::{ChunkSummary, RangeReport, WitnessStats};

/// Optional stopping rules; a stopped run yields a partial report with a
/// resume cursor.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunLimits {
    /// Process at most this many chunks in this run.
    pub max_chunks: Option<u64>,
    /// Stop scheduling new chunks once this much time has passed.
    pub time_budget: Option<Duration>,
}

/// Sieves the table a job needs, mapping an oversized range to a budget error.
pub fn build_table(job: &VerifyJob) -> Result<PrimeTable> {
    let bound = job
        .table_bound()
        .ok_or_else(|| HarnessError::Budget(format!("prime bound for {job:?} overflows u64")))?;
    let lo = if job.task == Task::Census { job.lo } else { 0 };
    sieve_range(lo, bound).map_err(|e| match e {
        CoreError::RangeTooLarge { len, budget } => HarnessError::Budget(format!(
            "prime table of {len} integers exceeds the sieve budget of {budget}"
        )),
        other => other.into(),
    })
}

pub fn run_job(job: &VerifyJob) -> Result<RangeReport> {
    run_job_with(job, RunLimits::default())
}

pub fn run_job_with(job: &VerifyJob, limits: RunLimits) -> Result<RangeReport> {
    job.validate()?;
    let table = build_table(job)?;
    run_job_with_table(job, &table, limits)
}

/// Runs `job` against a caller-supplied table; values outside it fall back
/// to the deterministic primality test.
pub fn run_job_with_table(
    job: &VerifyJob,
    table: &PrimeTable,
    limits: RunLimits,
) -> Result<RangeReport> {
    job.validate()?;
    execute(job, table, Vec::new(), Vec::new(), 0, limits)
}

/// Continues a partial report from its resume cursor.
pub fn resume_job(
    job: &VerifyJob,
    partial: &RangeReport,
    limits: RunLimits,
) -> Result<RangeReport> {
    job.validate()?;
    if !job.same_work(&partial.job) {
        return Err(HarnessError::InvalidJob(
            "resume report was produced by a different job".into(),
        ));
    }
    if partial.complete {
        return Ok(partial.clone());
    }
    let table = build_table(job)?;
    execute(
        job,
        &table,
        partial.per_chunk.clone(),
        partial.anomalies.clone(),
        partial.elapsed_ms,
        limits,
    )
}

fn execute(
    job: &VerifyJob,
    table: &PrimeTable,
    mut chunks: Vec<ChunkSummary>,
    mut anomalies: Vec<Anomaly>,
    prior_ms: u64,
    limits: RunLimits,
) -> Result<RangeReport> {
    let started = Instant::now();
    let total = job.chunk_count();
    let start = chunks.len() as u64;
    let end = limits
        .max_chunks
        .map_or(total, |m| start.saturating_add(m).min(total));
    let wave = match limits.time_budget {
        Some(_) => (job.workers as u64 * 4).max(1),
        None => (end - start).max(1),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(job.workers)
        .build()?;

    let mut next = start;
    while next < end {
        let stop = (next + wave).min(end);
        let results: Vec<ChunkOutput> = pool.install(|| {
            (next..stop)
                .into_par_iter()
                .map(|i| run_chunk(job, table, i))
                .collect::<Result<_>>()
        })?;
        for r in results {
            chunks.push(r.summary);
            anomalies.extend(r.anomalies);
        }
        next = stop;
        if limits.time_budget.is_some_and(|b| started.elapsed() >= b) {
            break;
        }
    }
    let elapsed = prior_ms + started.elapsed().as_millis() as u64;
    Ok(RangeReport::assemble(
        job.clone(),
        chunks,
        anomalies,
        elapsed,
    ))
}

struct ChunkOutput {
    summary: ChunkSummary,
    anomalies: Vec<Anomaly>,
}

#[derive(Default)]
struct Acc {
    verified: u64,
    anomalous: u64,
    anomalies: Vec<Anomaly>,
    stats: WitnessStats,
    counters: BTreeMap<String, u64>,
}

impl Acc {
    fn record<T>(&mut self, instance: u64, outcome: Outcome<T>, score: impl FnOnce(&T) -> u64) {
        match outcome {
            Outcome::Witness(w) => {
                self.verified += 1;
                self.stats.observe(instance, score(&w));
            }
            Outcome::Anomaly(a) => {
                self.anomalous += 1;
                self.anomalies.push(*a);
            }
        }
    }

    fn bump(&mut self, key: &str, by: u64) {
        *self.counters.entry(key.to_string()).or_insert(0) += by;
    }
}

fn run_chunk(job: &VerifyJob, table: &PrimeTable, index: u64) -> Result<ChunkOutput> {
    let started = Instant::now();
    let (a, b) = job.chunk_bounds(index);
    let mut acc = Acc::default();
    let mut census = None;
    let instances = job.task.instances(a, b);
    match job.task {
        Task::Goldbach => {
            for n in instances {
                acc.record(n, verify_goldbach(table, n)?, |p| p.p1);
            }
        }
        Task::Midpoint => {
            for n in instances {
                acc.record(n, closest_midpoint(table, n)?, |w| w.offset);
            }
        }
        Task::C2 => {
            for l in instances {
                acc.record(l, conjecture2_witness(table, l)?, |w| w.m);
            }
        }
        Task::C3 => {
            for i in instances {
                acc.record(i, conjecture3_witness(table, i)?, |w| w.m);
            }
        }
        Task::C4 => {
            for l in instances {
                acc.record(l, conjecture4_verify(table, l)?, |p| {
                    p.mixed.m.max(p.matched.m)
                });
            }
        }
        Task::T5 => {
            for n in instances {
                let mut worst = 0;
                let mut failures = Vec::new();
                for t in 1..=job.t_max {
                    for dir in [Sign::Plus, Sign::Minus] {
                        match first_offset_witness(table, t, n, dir)? {
                            Outcome::Witness(s) => {
                                worst = worst.max(s.first.offset);
                                if !s.within_modulus {
                                    acc.bump("outside_modulus", 1);
                                }
                            }
                            Outcome::Anomaly(x) => failures.push(*x),
                        }
                    }
                }
                acc.bump("pairs_checked", 2 * job.t_max);
                if failures.is_empty() {
                    acc.record(n, Outcome::Witness(worst), |&w| w);
                } else {
                    acc.anomalous += 1;
                    acc.anomalies.append(&mut failures);
                }
            }
        }
        Task::T6 => {
            for n in instances {
                let mut violations = Vec::new();
                for offset in (1..2 * n).step_by(2) {
                    match audit_collapse(table, n, offset)? {
                        Outcome::Witness(CollapseVerdict::Confirmed { .. }) => {
                            acc.bump("confirmed", 1)
                        }
                        Outcome::Witness(_) => acc.bump("vacuous", 1),
                        Outcome::Anomaly(x) => violations.push(*x),
                    }
                }
                if violations.is_empty() {
                    acc.verified += 1;
                } else {
                    acc.anomalous += 1;
                    acc.anomalies.append(&mut violations);
                }
            }
        }
        Task::T7 => {
            for n in instances {
                acc.record(n, coprime_witness(table, n)?, |w| w.offset);
            }
        }
        Task::Census => census = Some(census_chunk(table, a, b, &mut acc)),
    }
    Ok(ChunkOutput {
        summary: ChunkSummary {
            index,
            lo: a,
            hi: b,
            verified: acc.verified,
            anomalies: acc.anomalous,
            stats: acc.stats,
            counters: acc.counters,
            census,
            elapsed_ms: started.elapsed().as_millis() as u64,
        },
        anomalies: acc.anomalies,
    })
}

/// Every table prime is re-confirmed and classified by the deterministic
/// test; the tally must match the table's masked popcounts.
fn census_chunk(table: &PrimeTable, a: u64, b: u64, acc: &mut Acc) -> ClassCounts {
    let mut tally = ClassCounts::default();
    for p in table.primes_between(a, b) {
        match classify_mod4(p) {
            Ok(class) => {
                acc.verified += 1;
                match class {
                    ResidueClass::Two => tally.two += 1,
                    ResidueClass::OneMod4 => tally.one_mod_4 += 1,
                    ResidueClass::ThreeMod4 => tally.three_mod_4 += 1,
                }
            }
            Err(_) => {
                acc.anomalous += 1;
                acc.anomalies.push(
                    Anomaly::new(
                        AnomalyKind::CensusMismatch,
                        [p as i128, p as i128],
                        "table prime fails the deterministic test",
                    )
                    .with_input("p", p),
                );
            }
        }
    }
    let counted = table.class_counts(a, b);
    if counted != tally {
        acc.anomalous += 1;
        acc.anomalies.push(Anomaly::new(
            AnomalyKind::CensusMismatch,
            [a as i128, b as i128],
            format!("popcount {counted:?} != classified {tally:?}"),
        ));
    }
    tally
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_goldbach_runs() {
        let r = run_job(&VerifyJob::new(Task::Goldbach, 4, 4)).unwrap();
        assert_eq!((r.verified_count, r.anomaly_count), (1, 0));
        let r = run_job(&VerifyJob::new(Task::Goldbach, 4, 100).with_chunk(7)).unwrap();
        assert_eq!((r.verified_count, r.anomaly_count), (49, 0));
        assert!(r.complete);
    }

    #[test]
    fn conjecture2_to_1000() {
        let r = run_job(&VerifyJob::new(Task::C2, 2, 1000)).unwrap();
        assert_eq!((r.verified_count, r.anomaly_count), (999, 0));
    }

    #[test]
    fn census_chunked() {
        let r = run_job(&VerifyJob::new(Task::Census, 0, 1_000_000).with_chunk(99_991)).unwrap();
        let c = r.census.unwrap();
        assert_eq!(
            (c.one_mod_4, c.three_mod_4, c.total()),
            (39_175, 39_322, 78_498)
        );
        assert_eq!(r.verified_count, 78_498);
        assert_eq!(r.anomaly_count, 0);
    }

    #[test]
    fn t6_counts_confirmations() {
        let r = run_job(&VerifyJob::new(Task::T6, 1, 10)).unwrap();
        assert_eq!((r.verified_count, r.anomaly_count), (10, 0));
        // (9, 15) and (10, 15) are among the confirmed collapses.
        assert!(r.counters["confirmed"] >= 2);
    }

    #[test]
    fn injected_anomaly_surfaces() {
        let job = VerifyJob::new(Task::Goldbach, 4, 10);
        let faulty = goldbach_core::prime::sieve_range(0, 11)
            .unwrap()
            .masking(&[3, 5]);
        let r = run_job_with_table(&job, &faulty, RunLimits::default()).unwrap();
        assert_eq!((r.verified_count, r.anomaly_count), (1, 3));
        let ns: Vec<i128> = r.anomalies.iter().map(|a| a.input("n").unwrap()).collect();
        assert_eq!(ns, [6, 8, 10]);
        assert!(r
            .anomalies
            .iter()
            .all(|a| a.kind == AnomalyKind::GoldbachCounterexample));
    }

    #[test]
    fn budget_errors() {
        let job = VerifyJob::new(Task::Goldbach, 4, u64::MAX - 1);
        assert!(matches!(run_job(&job), Err(HarnessError::Budget(_))));
        let job = VerifyJob::new(Task::C2, 2, u64::MAX / 2);
        assert!(matches!(run_job(&job), Err(HarnessError::Budget(_))));
    }
}
