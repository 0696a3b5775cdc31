//! Acceptance suite: one test per verification criterion, each printing a
//! pass/fail line. Grids and tolerances are pinned inside `czic::verify`.
//!
//! Run with `cargo test -p czic --test acceptance -- --nocapture` to see
//! the per-criterion lines and timings.

use czic::verify::run_one;

fn criterion(index: usize) {
    let result = run_one(index, false, false);
    println!("{}", result.line());
    assert!(result.passed, "{}", result.detail);
}

#[test]
fn acceptance_01_very_weak_reference_run() {
    criterion(1);
}

#[test]
fn acceptance_02_weak_reference_run() {
    criterion(2);
}

#[test]
fn acceptance_03_very_strong_reference_run() {
    criterion(3);
}

#[test]
fn acceptance_04_global_feedback_reference_runs() {
    criterion(4);
}

#[test]
fn acceptance_05_scheme_formula_agreement() {
    criterion(5);
}

#[test]
fn acceptance_06_bound_sandwich_and_continuity() {
    criterion(6);
}

#[test]
fn acceptance_07_gaussian_gap_certification() {
    criterion(7);
}

#[test]
fn acceptance_08_marginal_parameter_cases() {
    criterion(8);
}

#[test]
fn acceptance_09_gdof_convergence() {
    criterion(9);
}

#[test]
fn acceptance_10_decodability_constraints() {
    criterion(10);
}

#[test]
fn acceptance_11_deterministic_outputs() {
    criterion(11);
}

#[test]
fn harness_detects_injected_fault() {
    // flipping one received bit must turn the agreement criterion red
    let result = run_one(5, true, true);
    println!("{}", result.line());
    assert!(!result.passed, "fault injection went unnoticed");
}
