//! Acceptance gate: one test per criterion, each printing a pass/fail line,
//! plus a determinism check comparing full reports across thread counts.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod suites;

use std::time::Instant;

use suites::{Report, SUITES};

fn run(index: usize) {
    let (name, suite) = SUITES[index];
    let start = Instant::now();
    let report: Report = suite();
    let verdict = if report.pass { "PASS" } else { "FAIL" };
    println!(
        "criterion {name}: {verdict} ({:.2}s)",
        start.elapsed().as_secs_f64()
    );
    print!("{}", report.details);
    assert!(report.pass, "criterion {name} failed:\n{}", report.details);
}

#[test]
fn criterion_01_heap_validation_equivalence() {
    run(0);
}

#[test]
fn criterion_02_bracket_identity_suite() {
    run(1);
}

#[test]
fn criterion_03_retract_round_trips() {
    run(2);
}

#[test]
fn criterion_04_first_isomorphism_theorem() {
    run(3);
}

#[test]
fn criterion_05_singleton_injectivity() {
    run(4);
}

#[test]
fn criterion_06_cancellation_equivalence() {
    run(5);
}

#[test]
fn criterion_07_projective_comparison() {
    run(6);
}

#[test]
fn criterion_08_injective_comparison() {
    run(7);
}

#[test]
fn criterion_09_splitting_propositions() {
    run(8);
}

#[test]
fn criterion_10_divisibility_suite() {
    run(9);
}

#[test]
fn criterion_11_hom_machinery() {
    run(10);
}

#[test]
fn criterion_12_hom_modules_and_powers() {
    run(11);
}

/// Criterion 13: every suite's report is byte-identical across runs with
/// different thread counts.
#[test]
fn criterion_13_determinism() {
    let start = Instant::now();
    let full_run = || {
        let mut all = String::new();
        for (name, suite) in SUITES {
            let report = suite();
            all.push_str(&format!("== {name} ==\n"));
            all.push_str(&report.details);
            assert!(report.pass, "criterion {name} failed inside the determinism run");
        }
        all
    };
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("pool");
    let multi = rayon::ThreadPoolBuilder::new()
        .num_threads(3)
        .build()
        .expect("pool");
    let report_single = single.install(full_run);
    let report_multi = multi.install(full_run);
    assert_eq!(
        report_single, report_multi,
        "reports differ across thread counts"
    );
    println!(
        "criterion 13 determinism: PASS ({:.2}s, {} report bytes identical across 1 and 3 threads)",
        start.elapsed().as_secs_f64(),
        report_single.len()
    );
}
