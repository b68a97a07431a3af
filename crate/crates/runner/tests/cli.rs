use std::process::Command;

fn purity_mc(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_purity-mc"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn table_run_writes_csv_and_passes() {
    let out = purity_mc(&["table1", "--alpha", "10", "--calls", "1000000"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("experiment,alpha,value,stderr,calls,entanglement,seed,shards,walltime_s")
    );
    assert!(lines.next().unwrap().starts_with("table1,10.0,"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS alpha 10"));
}

#[test]
fn failed_verdict_exits_one() {
    // far too few calls for alpha 10: the estimate misses the reference
    let out = purity_mc(&[
        "table2",
        "--calls",
        "20000",
        "--shards",
        "1",
        "--integrator",
        "plain",
    ]);
    assert_eq!(
        out.status.code(),
        Some(1),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL alpha 10"));
}

#[test]
fn config_errors_exit_two() {
    for args in [
        &["table1", "--alpha", "-3"][..],
        &["table1", "--shards", "0"],
        &["table1", "--rel-error", "2"],
        &["integrate"],
        &["bohr", "--masses", "1"],
        &["nonsense"],
        &["table1", "--format", "xml"],
    ] {
        assert_eq!(purity_mc(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn io_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("no").join("such").join("out.json");
    let out = purity_mc(&["bohr", "--out", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn json_output_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bohr.json");
    let out = purity_mc(&[
        "bohr",
        "--constants",
        "codata",
        "--out",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v[0]["experiment"], "bohr");
    assert!(v[0]["alpha"].is_null());
    let a = v[0]["value"].as_f64().unwrap();
    assert!((a / 2.349341563895734e-138 - 1.0).abs() < 1e-12);
}
