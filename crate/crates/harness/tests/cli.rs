use std::process::{Command, Output};

fn goldbach(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goldbach"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn witness_prints_every_partition() {
    let o = goldbach(&["witness", "24"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "24 = 5 + 19\n24 = 7 + 17\n24 = 11 + 13\n");
}

#[test]
fn witness_midpoint_form() {
    let o = goldbach(&["witness", "16", "--task", "midpoint"]);
    assert_eq!(stdout(&o), "(8, 3, 11, 5)\n(8, 5, 13, 3)\n");
}

#[test]
fn verify_csv_without_timing() {
    let o = goldbach(&[
        "verify",
        "--task",
        "goldbach",
        "--from",
        "4",
        "--to",
        "1000",
        "--no-timing",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "task,lo,hi,verified,anomalies,max_min_offset,elapsed_ms\ngoldbach,4,1000,499,0,73,0\n"
    );
}

#[test]
fn verify_json_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = goldbach(&[
        "verify",
        "--task",
        "t7",
        "--from",
        "2",
        "--to",
        "500",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["verified_count"], 499);
    assert_eq!(v["anomaly_count"], 0);
    assert_eq!(v["complete"], true);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["verify", "--task", "goldbach", "--from", "5", "--to", "10"][..],
        &["verify", "--task", "c9", "--from", "2", "--to", "10"],
        &["verify", "--task", "c2", "--from", "10", "--to", "2"],
        &["witness", "7"],
        &["frobnicate"],
    ] {
        let o = goldbach(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(goldbach(&["--help"]).status.code(), Some(0));
}

#[test]
fn partial_run_resumes_to_the_full_report() {
    let dir = tempfile::tempdir().unwrap();
    let partial = dir.path().join("partial.json");
    let base = [
        "verify",
        "--task",
        "c2",
        "--from",
        "2",
        "--to",
        "20000",
        "--chunk",
        "3000",
        "--no-timing",
    ];
    let mut first: Vec<&str> = base.to_vec();
    first.extend([
        "--max-chunks",
        "2",
        "--format",
        "json",
        "--out",
        partial.to_str().unwrap(),
    ]);
    let o = goldbach(&first);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&partial).unwrap()).unwrap();
    assert_eq!(v["complete"], false);
    assert_eq!(v["resume_cursor"], 6002);

    let mut resumed: Vec<&str> = base.to_vec();
    resumed.extend(["--resume", partial.to_str().unwrap()]);
    let whole = goldbach(&base);
    assert_eq!(stdout(&goldbach(&resumed)), stdout(&whole));
}

#[test]
fn census_checkpoints() {
    let o = goldbach(&["census", "--from", "100", "--to", "300", "--chunk", "100"]);
    assert_eq!(
        stdout(&o),
        "limit,count_one,count_three,total\n100,11,13,25\n200,21,24,46\n300,29,32,62\n"
    );
}

#[test]
fn progression_listing() {
    let o = goldbach(&[
        "progression",
        "--t",
        "3",
        "--offset",
        "1",
        "--sign",
        "minus",
        "--to",
        "6",
    ]);
    assert_eq!(stdout(&o), "n,value\n1,5\n2,11\n3,17\n4,23\n5,29\n");
    let o = goldbach(&[
        "progression",
        "--t",
        "3",
        "--offset",
        "3",
        "--to",
        "4",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degenerate"], true);
}
