//! End-to-end tests of the command line binary.

use std::io::Write;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_toric-gale"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn invariants_table_matches_worked_values() {
    let out = run(&["invariants", "running-example"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ED degree   = 50"));
    assert!(text.contains("delta       = (14, 24, 12)"));
    assert!(text.contains("dual degree = 14"));
}

#[test]
fn invariants_json_round_trips_byte_identically() {
    let out = run(&["invariants", "a2", "--format", "json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let doc = toric_gale::report::from_json(&text).unwrap();
    assert_eq!(doc.ed_degree, "252");
    assert_eq!(format!("{}\n", toric_gale::report::to_json(&doc)), text);
}

#[test]
fn table_and_json_show_the_same_numbers() {
    let json = stdout(&run(&["invariants", "a1", "--format", "json"]));
    let table = stdout(&run(&["invariants", "a1"]));
    let doc = toric_gale::report::from_json(&json).unwrap();
    assert!(table.contains(&format!("ED degree   = {}", doc.ed_degree)));
    assert!(table.contains(&format!("degree      = {}", doc.degree)));
    for f in &doc.faces {
        assert!(table.contains(&f.id), "face {} missing from table", f.id);
    }
}

#[test]
fn a6_ed_degree_from_the_command_line() {
    let out = run(&["invariants", "a6"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ED degree   = 74638158177"));
}

#[test]
fn gale_from_a_prints_dual_with_clean_diagnostics() {
    let out = run(&["gale", "running-example"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Gale dual B"));
    assert!(text.contains("diagnostics: none"));
}

#[test]
fn gale_from_b_reconstructs_a_valid_a() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    // the twisted cubic's Gale dual
    write!(file, "-2 -1\n3 1\n0 1\n-1 -1\n").unwrap();
    let out = run(&["gale", file.path().to_str().unwrap(), "--from", "b"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("reconstructed A (2 x 4)"));
    assert!(text.contains("diagnostics: none"));
}

#[test]
fn ragged_matrix_file_exits_3() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "1 2 3\n4 5\n").unwrap();
    let out = run(&["invariants", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("line 2"));
}

#[test]
fn unknown_fixture_exits_1_and_lists_names() {
    let out = run(&["invariants", "no-such-fixture"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("running-example"));
    assert!(err.contains("a6"));
}

#[test]
fn invalid_b_matrix_exits_1_with_diagnostic() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    // nonzero column sums
    write!(file, "1 0\n0 1\n1 1\n1 1\n").unwrap();
    let out = run(&["invariants", file.path().to_str().unwrap(), "--from", "b"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("nonzero sum"));
}

#[test]
fn check_passes_on_fixtures() {
    for name in ["running-example", "twisted-cubic", "a1"] {
        let out = run(&["check", name]);
        assert!(out.status.success(), "{name}");
        assert!(stdout(&out).contains("PASS"), "{name}");
    }
}

#[test]
fn check_declines_when_oracle_dimension_exceeded() {
    let out = run(&["check", "a6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("limited to n - 2 <= 7"));
}

#[test]
fn alternate_convention_requires_saturated_a() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    // first nonzero row minor is 2, so the reconstructed A spans an index-2
    // sublattice
    write!(file, "2 0\n0 1\n-1 2\n1 -1\n-2 -2\n").unwrap();
    let out = run(&[
        "invariants",
        file.path().to_str().unwrap(),
        "--from",
        "b",
        "--convention",
        "alternate",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("= 2"), "message should name the index: {err}");
}

#[test]
fn alternate_convention_on_running_example() {
    let out = run(&["invariants", "running-example", "--convention", "alternate"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("convention  = alternate"));
    assert!(text.contains("ED degree   = 50"));
}

#[test]
fn bench_emits_records_and_speedups() {
    let out = run(&[
        "bench",
        "--fixtures",
        "running-example,a1",
        "--reps",
        "2",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let records: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let records = records.as_array().unwrap();
    assert_eq!(records.len(), 6); // faces, B-matrix, A-matrix per fixture
    for r in records {
        assert!(r["seconds"].as_f64().unwrap() >= 0.0);
        assert_eq!(r["result_hash"].as_str().unwrap().len(), 64);
    }
    let table = stdout(&run(&["bench", "--fixtures", "a1", "--reps", "1"]));
    assert!(table.contains("speedup a1:"));
}

#[test]
fn bench_unknown_fixture_errors() {
    let out = run(&["bench", "--fixtures", "a9"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("available"));
}

#[test]
fn threads_flag_and_env_are_accepted() {
    let out = run(&["--threads", "2", "invariants", "twisted-cubic"]);
    assert!(out.status.success());
    let out = bin()
        .env("TORIC_GALE_THREADS", "1")
        .args(["invariants", "twisted-cubic"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("ED degree   = 7"));
}
