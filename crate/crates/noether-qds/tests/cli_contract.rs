//! Exit-code and report-schema contract of the binary, exercised end to end
//! through temp files.

use std::io::Write;
use std::process::{Command, Output};

use noether_qds::cli::{ProblemDocument, ReportDocument};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_noether-qds"))
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(content.as_bytes()).expect("write");
    f
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

const BLOCK_CHAIN_CONSTANT: &str = r#"{
  "version": "1",
  "kind": "classical",
  "d": 3,
  "M": [[-1.0, 1.0, 0.0], [1.0, -1.0, 0.0], [0.0, 0.0, 0.0]],
  "A": [3.0, 3.0, 8.0]
}"#;

const CHAIN_NONCONSTANT: &str = r#"{
  "version": "1",
  "kind": "classical",
  "d": 2,
  "M": [[-1.0, 1.0], [1.0, -1.0]],
  "A": [1.0, 2.0]
}"#;

fn dephasing_doc(observable: &str) -> String {
    format!(
        r#"{{
  "version": "1",
  "kind": "quantum",
  "d": 2,
  "H": [[[0,0],[0,0]],[[0,0],[0,0]]],
  "L": [[[[1,0],[0,0]],[[0,0],[-1,0]]]],
  "A": {observable}
}}"#
    )
}

const SIGMA_Z_JSON: &str = "[[[1,0],[0,0]],[[0,0],[-1,0]]]";
const SIGMA_X_JSON: &str = "[[[0,0],[1,0]],[[1,0],[0,0]]]";

const AMPLITUDE_DAMPING_DOC: &str = r#"{
  "version": "1",
  "kind": "quantum",
  "d": 2,
  "H": [[[0,0],[0,0]],[[0,0],[0,0]]],
  "L": [[[[0,0],[1,0]],[[0,0],[0,0]]]],
  "A": [[[1,0],[0,0]],[[0,0],[-1,0]]]
}"#;

#[test]
fn classical_constant_exits_zero() {
    let f = write_temp(BLOCK_CHAIN_CONSTANT);
    let out = run(&["classical-check", f.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: ReportDocument = serde_json::from_slice(&out.stdout).expect("valid report JSON");
    let classical = report.classical.expect("classical section");
    assert!(classical.is_constant);
    assert_eq!(classical.communication_classes, vec![vec![0, 1], vec![2]]);
}

#[test]
fn classical_nonconstant_exits_one() {
    let f = write_temp(CHAIN_NONCONSTANT);
    let out = run(&["classical-check", f.path().to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("constant: false"));
}

#[test]
fn classical_missing_field_exits_two() {
    let f = write_temp(r#"{"version":"1","kind":"classical","d":2,"A":[1.0,2.0]}"#);
    let out = run(&["classical-check", f.path().to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("M"));
    assert!(out.stdout.is_empty());
}

#[test]
fn classical_invalid_generator_exits_two() {
    let f = write_temp(
        r#"{"version":"1","kind":"classical","d":2,"M":[[0.0,-1.0],[0.0,1.0]],"A":[1.0,2.0]}"#,
    );
    let out = run(&["classical-check", f.path().to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("off-diagonal"));
}

#[test]
fn unreadable_path_exits_two() {
    let out = run(&["classical-check", "/nonexistent/problem.json"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn quantum_dephasing_sigma_z_constant_exit_zero() {
    let f = write_temp(&dephasing_doc(SIGMA_Z_JSON));
    let out = run(&[
        "quantum-analyze",
        f.path().to_str().unwrap(),
        "--constants",
        "--stationary",
        "--format",
        "json",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: ReportDocument = serde_json::from_slice(&out.stdout).expect("valid report JSON");
    let quantum = report.quantum.expect("quantum section");
    assert!(quantum.postulate_p.holds);
    assert_eq!(quantum.fixed_point_dimension, 2);
    assert_eq!(quantum.commutant_dimension, 2);
    assert!(quantum.subspace_distance < 1e-8);
    let noether = quantum.noether.expect("noether section");
    assert!(noether.is_constant);
}

#[test]
fn quantum_dephasing_sigma_x_constants_exit_one() {
    let f = write_temp(&dephasing_doc(SIGMA_X_JSON));
    let out = run(&["quantum-analyze", f.path().to_str().unwrap(), "--constants"]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("constant: false"));
}

#[test]
fn quantum_condexp_on_damping_exits_three() {
    let f = write_temp(AMPLITUDE_DAMPING_DOC);
    let out = run(&["quantum-analyze", f.path().to_str().unwrap(), "--condexp"]);
    assert_eq!(exit_code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("postulate"));
}

#[test]
fn quantum_condexp_on_dephasing_reports_matrix() {
    let f = write_temp(&dephasing_doc(SIGMA_X_JSON));
    let out = run(&[
        "quantum-analyze",
        f.path().to_str().unwrap(),
        "--condexp",
        "--format",
        "json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let report: ReportDocument = serde_json::from_slice(&out.stdout).unwrap();
    let ce = report
        .quantum
        .unwrap()
        .conditional_expectation
        .expect("conditional expectation present");
    // pinching kills σ_x entirely
    for row in &ce {
        for &[re, im] in row {
            assert!(re.abs() < 1e-9 && im.abs() < 1e-9);
        }
    }
}

#[test]
fn quantum_malformed_json_exits_two() {
    let f = write_temp("{ not json");
    let out = run(&["quantum-analyze", f.path().to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn quantum_bad_tolerance_override_exits_two() {
    let doc = r#"{"version":"1","kind":"quantum","d":2,
        "H":[[[0,0],[0,0]],[[0,0],[0,0]]],
        "tolerances":{"commute_tol":-1.0}}"#;
    let f = write_temp(doc);
    let out = run(&["quantum-analyze", f.path().to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn quantum_fixed_points_assertion_passes_on_dephasing() {
    let f = write_temp(&dephasing_doc(SIGMA_Z_JSON));
    let out = run(&["quantum-analyze", f.path().to_str().unwrap(), "--fixed-points"]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn quantum_stationary_assertion_fails_on_damping() {
    let f = write_temp(AMPLITUDE_DAMPING_DOC);
    let out = run(&["quantum-analyze", f.path().to_str().unwrap(), "--stationary"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn quantum_tol_override_loosens_the_verdict() {
    // σ_x under dephasing fails at default tolerances and "passes" when the
    // decision tolerances are loosened beyond its residuals
    let f = write_temp(&dephasing_doc(SIGMA_X_JSON));
    let strict = run(&["quantum-analyze", f.path().to_str().unwrap(), "--constants"]);
    assert_eq!(exit_code(&strict), 1);
    let loose = run(&[
        "quantum-analyze",
        f.path().to_str().unwrap(),
        "--constants",
        "--tol",
        "100.0",
    ]);
    assert_eq!(exit_code(&loose), 0);
}

#[test]
fn classical_time_grid_flag_accepted() {
    let f = write_temp(BLOCK_CHAIN_CONSTANT);
    let out = run(&[
        "classical-check",
        f.path().to_str().unwrap(),
        "--time-grid",
        "0,0.2,2.5",
    ]);
    assert_eq!(exit_code(&out), 0);
    let bad = run(&[
        "classical-check",
        f.path().to_str().unwrap(),
        "--time-grid",
        "-1.0",
    ]);
    assert_eq!(exit_code(&bad), 2);
}

#[test]
fn verify_zero_trials_exits_zero() {
    let out = run(&["verify", "paper-suite", "--trials", "0", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let report: ReportDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.suites.expect("suites present").len(), 0);
}

#[test]
fn verify_small_paper_suite_passes() {
    let out = run(&["verify", "paper-suite", "--seed", "7", "--trials", "3"]);
    assert_eq!(
        exit_code(&out),
        0,
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("overall: PASS"));
}

#[test]
fn verify_env_seed_is_used() {
    let out = bin()
        .args(["verify", "paper-suite", "--trials", "0", "--format", "json"])
        .env("NOETHER_QDS_SEED", "12345")
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);
    let report: ReportDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.seed, Some(12345));
}

#[test]
fn verify_recipe_with_bad_blocks_exits_two() {
    let recipe = r#"{
      "version": "1",
      "recipes": [
        {"kind": "structured_commutant", "d": 4, "blocks": [[1, 2], [1, 1]], "trials": 1}
      ]
    }"#;
    let f = write_temp(recipe);
    let out = run(&["verify", f.path().to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("block"));
}

#[test]
fn verify_recipe_file_runs() {
    let recipe = r#"{
      "version": "1",
      "recipes": [
        {"kind": "random_classical", "trials": 5, "seed": 3},
        {"kind": "named_example", "name": "dephasing"}
      ]
    }"#;
    let f = write_temp(recipe);
    let out = run(&["verify", f.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: ReportDocument = serde_json::from_slice(&out.stdout).unwrap();
    let suites = report.suites.unwrap();
    assert_eq!(suites.len(), 2);
    assert!(suites.iter().all(|s| s.failures == 0));
}

#[test]
fn problem_document_roundtrip_through_disk() {
    let doc: ProblemDocument = serde_json::from_str(BLOCK_CHAIN_CONSTANT).unwrap();
    let text = serde_json::to_string_pretty(&doc).unwrap();
    let parsed: ProblemDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(doc, parsed);
}
