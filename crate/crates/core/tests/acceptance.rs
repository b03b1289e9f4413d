//! Acceptance suite. One test per criterion; each prints a PASS/FAIL line
//! (visible with `--nocapture`) and enforces its runtime budget.

use std::time::{Duration, Instant};

use monogerm::selftest::{self, CheckResult};

fn report(criterion: &str, results: &[CheckResult], elapsed: Duration, budget: Duration) {
    let all_passed = results.iter().all(|r| r.passed);
    let within = elapsed <= budget;
    println!(
        "{} {criterion}: {} checks in {elapsed:.2?} (budget {budget:.2?})",
        if all_passed && within { "PASS" } else { "FAIL" },
        results.len(),
    );
    for r in results.iter().filter(|r| !r.passed) {
        println!("    failed: {} — {}", r.name, r.detail);
    }
    assert!(all_passed, "{criterion}: a check failed");
    assert!(
        within,
        "{criterion}: {elapsed:.2?} exceeded the {budget:.2?} budget"
    );
}

#[test]
fn criterion_1_delta_oracle_suite() {
    // each worked delta value must come out exactly, each within a second
    let t0 = Instant::now();
    let mut results = Vec::new();
    for (text, expected) in selftest::delta_examples() {
        let t = Instant::now();
        let r = selftest::check_delta_example(&text, expected);
        let each = t.elapsed();
        assert!(
            each < Duration::from_secs(1),
            "{text}: {each:.2?} exceeded the 1 s per-example budget"
        );
        results.push(r);
    }
    results.extend(selftest::run_delta_suite());
    report(
        "criterion 1 (delta oracle suite)",
        &results,
        t0.elapsed(),
        Duration::from_secs(20),
    );
}

#[test]
fn criterion_2_gap_apery_suite() {
    let t0 = Instant::now();
    let results = selftest::run_semigroup_suite(42, 200);
    report(
        "criterion 2 (gap/Apéry suite)",
        &results,
        t0.elapsed(),
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_3_classifier_cross_oracle() {
    let t0 = Instant::now();
    let results = selftest::run_cross_oracle(42, 500);
    report(
        "criterion 3 (classifier vs certified box count)",
        &results,
        t0.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_4_delta_sandwich() {
    let t0 = Instant::now();
    let results = selftest::run_sandwich(42, 100);
    report(
        "criterion 4 (delta sandwich)",
        &results,
        t0.elapsed(),
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_5_double_point_formulas() {
    let t0 = Instant::now();
    let results = selftest::run_double_point_suite();
    report(
        "criterion 5 (double-point formulas)",
        &results,
        t0.elapsed(),
        Duration::from_secs(20),
    );
}

#[test]
fn criterion_6_bound_interval_containment() {
    let t0 = Instant::now();
    let results = selftest::run_bound_containment();
    report(
        "criterion 6 (bound-interval containment)",
        &results,
        t0.elapsed(),
        Duration::from_secs(20),
    );
}

#[test]
fn criterion_7_dimension_thresholds() {
    let t0 = Instant::now();
    let results = selftest::run_dimension_thresholds(42, 200);
    report(
        "criterion 7 (dimension thresholds)",
        &results,
        t0.elapsed(),
        Duration::from_secs(20),
    );
}
