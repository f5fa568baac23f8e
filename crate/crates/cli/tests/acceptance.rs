//! Acceptance battery: one test per criterion, exact comparisons only.

use std::io::Write;

use edsx::checks::{run_criterion, Status, TITLES};
use edsx::properties::DEFAULT_CASES;

fn criterion(k: usize) {
    let result = run_criterion(k, DEFAULT_CASES);
    let verdict = if result.passed() { "PASS" } else { "FAIL" };
    // Written to the handle directly so the verdict shows up even when output is captured.
    let mut out = std::io::stdout().lock();
    writeln!(out, "criterion {k:>2}: {verdict}  {}", TITLES[k - 1]).expect("stdout");
    drop(out);
    for c in &result.checks {
        match c.status {
            Status::Fail => println!("    FAIL {}: expected {}, computed {}", c.id, c.expected, c.computed),
            Status::Flagged => println!("    flagged {}: printed {}, computed {}", c.id, c.expected, c.computed),
            Status::Pass | Status::Report => {}
        }
    }
    assert!(result.passed(), "criterion {k} failed");
}

#[test]
fn criterion_01_even_polar_table() {
    criterion(1);
}

#[test]
fn criterion_02_odd_polar_sums() {
    criterion(2);
}

#[test]
fn criterion_03_strong_admissibility() {
    criterion(3);
}

#[test]
fn criterion_04_stability() {
    criterion(4);
}

#[test]
fn criterion_05_gamma_hyperplanes() {
    criterion(5);
}

#[test]
fn criterion_06_so3_in_so9() {
    criterion(6);
}

#[test]
fn criterion_07_operators() {
    criterion(7);
}

#[test]
fn criterion_08_restriction() {
    criterion(8);
}

#[test]
fn criterion_09_killing_oracle() {
    criterion(9);
}

#[test]
fn criterion_10_property_suites() {
    criterion(10);
}
