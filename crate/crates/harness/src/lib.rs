//! Range verification driver for `goldbach-core`.
//!
//! A [`VerifyJob`] names a task and an inclusive range; [`run_job`] splits the
//! range into fixed-width chunks, runs them on a worker pool over one shared
//! prime table and merges the chunk results in range order, so the report
//! does not depend on the number of workers.

pub mod error;
pub mod job;
pub mod report;
pub mod run;
pub mod witness;

pub use error::{HarnessError, Result};
pub use job::{Task, VerifyJob};
pub use report::{
    emit_report, emit_reports, ChunkSummary, Format, RangeReport, ReportOptions, WitnessStats,
};
pub use run::{resume_job, run_job, run_job_with, run_job_with_table, RunLimits};
pub use witness::show_witness;
