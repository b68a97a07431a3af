use purity_mc::output::COLUMNS;
use purity_mc::{read_results, write_results, write_to, Format, ResultRow, RunError};

fn rows() -> Vec<ResultRow> {
    vec![
        ResultRow {
            experiment: "table2".into(),
            alpha: Some(10.0),
            value: 7.123456789012345e-5,
            stderr: 1.0 / 3.0 * 1e-5,
            calls: 255_000_000,
            entanglement: Some(1.0 - 7.123456789012345e-5),
            seed: u64::MAX,
            shards: 8,
            walltime_s: 12.5,
        },
        ResultRow {
            experiment: "bohr".into(),
            alpha: None,
            value: 2.375119475636861e-138,
            stderr: 0.0,
            calls: 0,
            entanglement: None,
            seed: 42,
            shards: 1,
            walltime_s: 1e-6,
        },
    ]
}

#[test]
fn empty_results_give_header_only() {
    let mut buf = Vec::new();
    write_to(&[], Format::Csv, &mut buf, "mem".as_ref()).unwrap();
    assert_eq!(
        String::from_utf8(buf).unwrap(),
        format!("{}\n", COLUMNS.join(","))
    );
    let mut buf = Vec::new();
    write_to(&[], Format::Json, &mut buf, "mem".as_ref()).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap().trim(), "[]");
}

#[test]
fn csv_header_and_round_trip_are_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    write_results(&rows(), Format::Csv, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "experiment,alpha,value,stderr,calls,entanglement,seed,shards,walltime_s"
    );
    // missing alpha and entanglement are empty fields
    assert!(text.lines().nth(2).unwrap().starts_with("bohr,,"));
    assert_eq!(read_results(Format::Csv, &path).unwrap(), rows());
}

#[test]
fn json_round_trip_is_exact_and_uses_column_names() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    write_results(&rows(), Format::Json, &path).unwrap();
    let back = read_results(Format::Json, &path).unwrap();
    assert_eq!(back, rows());
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let keys: Vec<&str> = value[0]
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    let mut expected = COLUMNS.to_vec();
    expected.sort_unstable();
    let mut keys = keys;
    keys.sort_unstable();
    assert_eq!(keys, expected);
}

#[test]
fn unwritable_path_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let err = write_results(&rows(), Format::Csv, &path).unwrap_err();
    assert!(matches!(err, RunError::Io { .. }));
    assert_eq!(err.exit_code(), 3);
}
