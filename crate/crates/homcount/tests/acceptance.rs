//! Acceptance gate: the eleven verification suites at full scale, one test
//! per criterion, each printing a pass/fail line. Run with
//! `cargo test -p homcount --test acceptance -- --nocapture` or through the
//! CLI as `homcount verify all`.

use homcount::verify::{run_suite, VerifyOptions};

fn criterion(number: usize, suite: &str) {
    let opts = VerifyOptions::default();
    let result = run_suite(suite, &opts).expect("suite runs");
    let mut all = true;
    for check in &result.checks {
        println!(
            "[{}] criterion {number} ({suite}): {} ({} ms){}",
            if check.pass { "PASS" } else { "FAIL" },
            check.description,
            check.elapsed_ms,
            check
                .detail
                .as_deref()
                .map(|d| format!(" — {d}"))
                .unwrap_or_default()
        );
        all &= check.pass;
    }
    assert!(all, "criterion {number} ({suite}) failed");
}

#[test]
fn criterion_01_lovasz_separation() {
    criterion(1, "lovasz");
}

#[test]
fn criterion_02_right_lovasz_separation() {
    criterion(2, "right-lovasz");
}

#[test]
fn criterion_03_identity_suite() {
    criterion(3, "identities");
}

#[test]
fn criterion_04_expressiveness_ground_truth() {
    criterion(4, "expressive");
}

#[test]
fn criterion_05_isolated_vertex_forge() {
    criterion(5, "forge-isolated");
}

#[test]
fn criterion_06_planarity_and_colorability_forges() {
    criterion(6, "forge-separation");
}

#[test]
fn criterion_07_star_decoding() {
    criterion(7, "star-decoding");
}

#[test]
fn criterion_08_family_encoding() {
    criterion(8, "encoding");
}

#[test]
fn criterion_09_two_adaptive_triple() {
    criterion(9, "two-adaptive");
}

#[test]
fn criterion_10_cancellation_evidence() {
    criterion(10, "cancellation");
}

#[test]
fn criterion_11_right_hom_suite() {
    criterion(11, "right-hom");
}
