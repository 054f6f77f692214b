use goldbach_core::AnomalyKind;
use goldbach_harness::{
    emit_report, resume_job, run_job, run_job_with, run_job_with_table, Format, ReportOptions,
    RunLimits, Task, VerifyJob,
};
use proptest::prelude::*;

fn json(r: &goldbach_harness::RangeReport) -> Vec<u8> {
    emit_report(r, Format::Json, ReportOptions { timing: false }).unwrap()
}

#[test]
fn reports_ignore_worker_count() {
    for task in [Task::Goldbach, Task::C3, Task::T6, Task::Census] {
        let job = VerifyJob::new(task, task.floor(), 5_000).with_chunk(311);
        let one = json(&run_job(&job.clone().with_workers(1)).unwrap());
        for workers in [2, 3, 7] {
            assert_eq!(
                json(&run_job(&job.clone().with_workers(workers)).unwrap()),
                one,
                "{task}"
            );
        }
    }
}

#[test]
fn every_task_runs_clean_on_a_small_range() {
    for task in Task::ALL {
        let r = run_job(
            &VerifyJob::new(task, task.floor(), 300)
                .with_chunk(64)
                .with_t_max(5),
        )
        .unwrap();
        assert!(r.complete, "{task}");
        assert_eq!(r.anomaly_count, 0, "{task}");
        assert!(r.verified_count > 0, "{task}");
    }
}

#[test]
fn resume_in_steps_matches_one_run() {
    let job = VerifyJob::new(Task::Midpoint, 4, 50_000).with_chunk(4_000);
    let whole = run_job(&job).unwrap();
    let step = RunLimits {
        max_chunks: Some(3),
        ..RunLimits::default()
    };
    let mut partial = run_job_with(&job, step).unwrap();
    let mut rounds = 1;
    while !partial.complete {
        assert_eq!(
            partial.resume_cursor,
            Some(4 + partial.per_chunk.len() as u64 * 4_000)
        );
        partial = resume_job(&job, &partial, step).unwrap();
        rounds += 1;
    }
    assert_eq!(rounds, 5);
    assert_eq!(json(&partial), json(&whole));
}

#[test]
fn resume_rejects_other_jobs() {
    let job = VerifyJob::new(Task::C2, 2, 1_000).with_chunk(100);
    let partial = run_job_with(
        &job,
        RunLimits {
            max_chunks: Some(1),
            ..Default::default()
        },
    )
    .unwrap();
    let other = job.clone().with_chunk(50);
    assert!(resume_job(&other, &partial, RunLimits::default()).is_err());
}

#[test]
fn zero_time_budget_still_makes_progress() {
    let job = VerifyJob::new(Task::C2, 2, 100_000).with_chunk(1_000);
    let limits = RunLimits {
        time_budget: Some(std::time::Duration::ZERO),
        ..Default::default()
    };
    let r = run_job_with(&job, limits).unwrap();
    assert!(!r.complete);
    assert!(!r.per_chunk.is_empty());
}

#[test]
fn injected_fault_is_reported_not_hidden() {
    let job = VerifyJob::new(Task::C2, 2, 50);
    let table = goldbach_core::sieve_range(0, 202).unwrap().masking(&[5]);
    let r = run_job_with_table(&job, &table, RunLimits::default()).unwrap();
    // Without 5, level 2 (target 8) has no 4m+1 / 4n-1 witness left.
    assert!(r.anomaly_count >= 1);
    let a = &r.anomalies[0];
    assert_eq!(a.kind, AnomalyKind::MixedFormMissing);
    assert_eq!(a.input("l"), Some(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chunking_does_not_change_the_result(chunk in 1u64..3_000, hi in 10u64..6_000) {
        let job = VerifyJob::new(Task::C2, 2, hi);
        let a = run_job(&job).unwrap().body();
        let b = run_job(&job.clone().with_chunk(chunk)).unwrap().body();
        prop_assert_eq!(a, b);
    }
}
