//! The acceptance suite: every verification battery must pass, exactly
//! (tolerance zero — all arithmetic here is exact). One line is printed per
//! battery; run with `--nocapture` to see them.

use std::time::Instant;
use weightkit::verify::{run_criterion, BatteryConfig};

fn run(id: usize) {
    let config = BatteryConfig::default();
    let start = Instant::now();
    let outcome = run_criterion(id, &config);
    println!("{} [{:?}]", outcome.summary_line(), start.elapsed());
    assert!(
        outcome.passed,
        "criterion {} failed:\n{}",
        outcome.id,
        outcome.failures.join("\n")
    );
}

#[test]
fn criterion_01_snf_soundness() {
    run(1);
}

#[test]
fn criterion_02_weight_axioms() {
    run(2);
}

#[test]
fn criterion_03_two_term_classification() {
    run(3);
}

#[test]
fn criterion_04_pd_weight_correspondence() {
    run(4);
}

#[test]
fn criterion_05_contramodule_oracle() {
    run(5);
}

#[test]
fn criterion_06_heart_predicate_equivalence() {
    run(6);
}

#[test]
fn criterion_07_local_complexes() {
    run(7);
}

#[test]
fn criterion_08_completion_square() {
    run(8);
}

#[test]
fn criterion_09_projectivity() {
    run(9);
}

#[test]
fn criterion_10_flatness() {
    run(10);
}

#[test]
fn criterion_11_cross_path_consistency() {
    run(11);
}
