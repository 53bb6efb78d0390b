//! End-to-end runs of the `revunc` binary: output files and exit codes.

use std::path::Path;
use std::process::{Command, Output};

const QUBIT_XZ: &str = r#"{
    "dim": 2,
    "A": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]],
    "B": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]],
    "phi": [[1, 0], [0, 0]]
}"#;

fn revunc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revunc")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn verify_qutrit_preset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("qutrit.json");
    let p = path.to_str().unwrap();
    assert_eq!(code(&revunc(&["generate", "--preset", "qutrit", "--output", p])), 0);
    let report = dir.path().join("report.json");
    let out = revunc(&["verify", p, "--json", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    let line = |name: &str| text.lines().find(|l| l.starts_with(name)).unwrap().to_owned();
    assert!(line("REV_COV ").contains("EQUALITY"));
    assert!(line("REV_DW ").contains("EQUALITY"));

    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(json["all_hold"], true);
    assert_eq!(json["records"].as_array().unwrap().len(), 9);
}

#[test]
fn verify_eigenstate_marks_rev_dw_undefined() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "xz.json", QUBIT_XZ);
    let out = revunc(&["verify", &p]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("REV_DW ") && l.contains("UNDEFINED")));
}

#[test]
fn false_claim_exits_with_violation() {
    let dir = tempfile::tempdir().unwrap();
    let claimed = QUBIT_XZ.replace(
        r#""phi": [[1, 0], [0, 0]]"#,
        r#""phi": [[1, 0], [0, 0]],
        "records": [{"relation": "REV_COV", "lhs": 1.0, "rhs": 0.5}]"#,
    );
    let p = write(dir.path(), "claim.json", &claimed);
    assert_eq!(code(&revunc(&["verify", &p, "--quiet"])), 1);

    let honest = claimed.replace(r#""rhs": 0.5"#, r#""rhs": 1.0"#);
    let p = write(dir.path(), "honest.json", &honest);
    assert_eq!(code(&revunc(&["verify", &p, "--quiet"])), 0);
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let non_hermitian = QUBIT_XZ.replace(r#"[[[0, 0], [1, 0]], [[1, 0], [0, 0]]]"#, r#"[[[0, 0], [1, 0]], [[0, 0], [0, 0]]]"#);
    let p = write(dir.path(), "bad.json", &non_hermitian);
    let out = revunc(&["verify", &p]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains('A'));

    assert_eq!(code(&revunc(&["verify", "/nonexistent/instance.json"])), 2);
    assert_eq!(code(&revunc(&["sweep", "--relations", "NOPE"])), 2);
    assert_eq!(code(&revunc(&["extremal", "--relation", "ROBERTSON", "--paulis", "X,Z"])), 2);
    assert_eq!(code(&revunc(&["extremal", "--relation", "CS", "--paulis", "X,Z"])), 2);
}

#[test]
fn sweep_orthogonal_deviation_collapses_rev_cov() {
    let out = revunc(&[
        "sweep", "--dims", "3,4", "--trials", "200", "--seed", "7", "--provenance", "ORTHO_DEVIATION", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let tallies = report["tallies"].as_array().unwrap();
    let rev_cov: Vec<_> = tallies.iter().filter(|t| t["relation"] == "REV_COV").collect();
    assert_eq!(rev_cov.len(), 2);
    for t in rev_cov {
        assert_eq!(t["equality_count"], 200, "{t}");
    }
    assert_eq!(report["total_violations"], 0);
}

#[test]
fn sweep_csv_stdout_is_seed_deterministic() {
    let args = ["sweep", "--dims", "2", "--trials", "50", "--seed", "3", "--format", "csv"];
    let a = revunc(&args);
    let b = revunc(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let other = revunc(&["sweep", "--dims", "2", "--trials", "50", "--seed", "4", "--format", "csv"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn extremal_finds_saturating_state() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("ext.json");
    let out = revunc(&["extremal", "--relation", "REV_COV", "--paulis", "X,Z", "--trace", "--output", json.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert!(report["best_gap"].as_f64().unwrap() <= 1e-6);
    assert!(!report["trace"].as_array().unwrap().is_empty());
}

#[test]
fn demo_prints_reduced_forms() {
    let out = revunc(&["demo"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("REV_DW   UNDEFINED"));
    assert!(text.lines().any(|l| l.contains("REV_COV") && l.contains("lhs = 2.00000") && l.contains("rhs = 2.00000")));
}
