//! Acceptance suite: every criterion runs at its stated instance count and
//! tolerance and prints one pass/fail line. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use noether_qds::harness::{
    suite_classical_embedding, suite_classical_fourway, suite_conditional_expectation,
    suite_hat_trace_identity, suite_postulate_decisions, suite_proposition_equivalence,
    suite_relaxation, suite_vf_theorem, NamedExample, SuiteResult,
};
use noether_qds::ToleranceConfig;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn report(label: &str, suite: &SuiteResult) {
    println!(
        "{label}: {} ({} instances, {} failures, max residual {:.3e})",
        if suite.passed() { "PASS" } else { "FAIL" },
        suite.instances,
        suite.failures,
        suite.max_residual,
    );
    for note in &suite.notes {
        println!("    note: {note}");
    }
    assert!(suite.passed(), "{label} failed: {:?}", suite.notes);
}

#[test]
fn criterion_1_classical_four_way_equivalence() {
    // 200 seeded generators, d in 2..=6, class-constant and generic A each
    let suite = suite_classical_fourway(200, 42, &cfg()).unwrap();
    assert_eq!(suite.instances, 200);
    report("criterion 1 (classical four-way equivalence)", &suite);
}

#[test]
fn criterion_2_hat_trace_identity() {
    let suite = suite_hat_trace_identity(100, 43, &cfg()).unwrap();
    assert_eq!(suite.instances, 100);
    report("criterion 2 (hat-map trace identity)", &suite);
}

#[test]
fn criterion_3_proposition_equivalence() {
    let suite = suite_proposition_equivalence(10, 44, &cfg()).unwrap();
    report("criterion 3 (hat-commutation iff fixed point)", &suite);
}

#[test]
fn criterion_4_fixed_points_equal_commutant() {
    let suite = suite_vf_theorem(50, 45, None, &cfg()).unwrap();
    assert!(suite.instances >= 50);
    report("criterion 4 (fixed points = commutant, algebra closure)", &suite);
}

#[test]
fn criterion_5_postulate_decisions() {
    let suite = suite_postulate_decisions(&NamedExample::all(), &cfg()).unwrap();
    report("criterion 5 (postulate (P) decisions + integration cross-check)", &suite);
}

#[test]
fn criterion_6_conditional_expectation() {
    let suite = suite_conditional_expectation(5, 46, &cfg()).unwrap();
    report("criterion 6 (conditional expectation identities)", &suite);
}

#[test]
fn criterion_7_relaxation() {
    let suite = suite_relaxation(47, &cfg()).unwrap();
    assert!(suite.instances >= 2, "need relaxing instances, got {}", suite.instances);
    report("criterion 7 (relaxation to the stationary state)", &suite);
}

#[test]
fn criterion_8_classical_embedding() {
    let suite = suite_classical_embedding(100, 48, &cfg()).unwrap();
    assert_eq!(suite.instances, 100);
    report("criterion 8 (classical embedding consistency)", &suite);
}
