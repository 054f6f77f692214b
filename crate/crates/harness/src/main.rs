use std::fs::{self, File};
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use goldbach_core::conjecture::Sign;
use goldbach_core::prime::sieve_range;
use goldbach_core::progression::{progression_primes, ProgressionSpec};
use goldbach_harness::job::DEFAULT_CHUNK;
use goldbach_harness::report::write_report;
use goldbach_harness::{
    resume_job, run_job_with, show_witness, Format, HarnessError, RangeReport, ReportOptions,
    RunLimits, Task, VerifyJob,
};

const EXIT_CLEAN: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_ANOMALY: u8 = 2;

#[derive(Parser)]
#[command(
    name = "goldbach",
    version,
    about = "Goldbach-type range verification and witness search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every instance of a task over an inclusive range.
    Verify {
        #[arg(long)]
        task: Task,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, default_value_t = DEFAULT_CHUNK)]
        chunk: u64,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        #[arg(long, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest t checked per instance by the t5 task.
        #[arg(long, default_value_t = 50)]
        t_max: u64,
        /// Stop after this many chunks and report a resume cursor.
        #[arg(long)]
        max_chunks: Option<u64>,
        /// Stop scheduling chunks after this many seconds.
        #[arg(long)]
        time_budget_secs: Option<u64>,
        /// Continue from a partial JSON report written by an earlier run.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Zero every elapsed time and timestamp for byte-stable output.
        #[arg(long)]
        no_timing: bool,
    },
    /// Print every witness of one target.
    Witness {
        n: u64,
        #[arg(long, default_value = "goldbach")]
        task: Task,
        /// Progression parameter for the t5 task.
        #[arg(long, default_value_t = 1)]
        t: u64,
    },
    /// Prime counts by residue class mod 4 at limits from..=to, stepping by chunk.
    Census {
        #[arg(long)]
        from: Option<u64>,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        chunk: Option<u64>,
        #[arg(long, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prime terms of 2tn ± offset for n in 1..=to.
    Progression {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        offset: u64,
        #[arg(long, default_value = "plus", value_parser = parse_sign)]
        sign: Sign,
        #[arg(long)]
        to: u64,
        #[arg(long, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "plus" | "+" | "+1" => Ok(Sign::Plus),
        "minus" | "-" | "-1" => Ok(Sign::Minus),
        _ => Err(format!("expected plus or minus, got {s:?}")),
    }
}

fn sink(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_CLEAN
            });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> Result<u8, HarnessError> {
    match command {
        Command::Verify {
            task,
            from,
            to,
            chunk,
            workers,
            format,
            out,
            t_max,
            max_chunks,
            time_budget_secs,
            resume,
            no_timing,
        } => {
            let job = VerifyJob::new(task, from, to)
                .with_chunk(chunk)
                .with_workers(workers)
                .with_t_max(t_max);
            let limits = RunLimits {
                max_chunks,
                time_budget: time_budget_secs.map(Duration::from_secs),
            };
            let report = match resume {
                Some(path) => {
                    let partial: RangeReport = serde_json::from_slice(&fs::read(path)?)?;
                    resume_job(&job, &partial, limits)?
                }
                None => run_job_with(&job, limits)?,
            };
            write_report(
                sink(&out)?,
                &report,
                format,
                ReportOptions { timing: !no_timing },
            )?;
            if !report.complete {
                eprintln!(
                    "partial run: resume from {} with --resume and a JSON report",
                    report.resume_cursor.unwrap_or(to)
                );
            }
            Ok(if report.has_anomalies() {
                EXIT_ANOMALY
            } else {
                EXIT_CLEAN
            })
        }
        Command::Witness { n, task, t } => {
            let w = show_witness(n, task, t)?;
            let mut out = io::stdout().lock();
            for line in &w.lines {
                writeln!(out, "{line}")?;
            }
            Ok(match w.anomaly {
                Some(a) => {
                    eprintln!("anomaly: {:?}: {}", a.kind, a.detail);
                    EXIT_ANOMALY
                }
                None => EXIT_CLEAN,
            })
        }
        Command::Census {
            from,
            to,
            chunk,
            format,
            out,
        } => {
            let table = sieve_range(0, to.saturating_add(1))?;
            let from = from.unwrap_or(to).max(2);
            let step = chunk.unwrap_or(to.saturating_sub(from).max(1)).max(1);
            let mut limits: Vec<u64> = (from..=to).step_by(step as usize).collect();
            if limits.last() != Some(&to) {
                limits.push(to);
            }
            let rows = limits
                .into_iter()
                .map(|l| table.census(l))
                .collect::<Result<Vec<_>, _>>()?;
            let mut w = sink(&out)?;
            match format {
                Format::Csv => {
                    let mut csv = csv::Writer::from_writer(&mut w);
                    for row in &rows {
                        csv.serialize(row)?;
                    }
                    csv.flush()?;
                }
                Format::Json => {
                    serde_json::to_writer_pretty(&mut w, &rows)?;
                    writeln!(w)?;
                }
            }
            Ok(if rows.iter().all(|r| r.is_consistent()) {
                EXIT_CLEAN
            } else {
                EXIT_ANOMALY
            })
        }
        Command::Progression {
            t,
            offset,
            sign,
            to,
            format,
            out,
        } => {
            let spec = ProgressionSpec::new(t, offset, sign)?;
            let table = sieve_range(0, spec.value(to).unwrap_or(0).saturating_add(1))?;
            let report = progression_primes(&table, spec, to)?;
            let mut w = sink(&out)?;
            match format {
                Format::Csv => {
                    let mut csv = csv::Writer::from_writer(&mut w);
                    csv.write_record(["n", "value"])?;
                    for (n, v) in &report.hits {
                        csv.write_record([n.to_string(), v.to_string()])?;
                    }
                    csv.flush()?;
                }
                Format::Json => {
                    serde_json::to_writer_pretty(&mut w, &report)?;
                    writeln!(w)?;
                }
            }
            if report.degenerate {
                eprintln!("note: gcd(2t, offset) > 1, at most one prime term is possible");
            }
            Ok(EXIT_CLEAN)
        }
    }
}
