//! Acceptance gate: one test per criterion, each printing its pass/fail line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use ghkit::acceptance;

fn gate(outcome: acceptance::CriterionOutcome) {
    println!("{outcome}");
    assert!(outcome.passed, "{outcome}");
}

#[test]
fn criterion_1_oracle_equivalence() {
    gate(acceptance::oracle_equivalence());
}

#[test]
fn criterion_2_bijection_identities() {
    gate(acceptance::bijection_identities());
}

#[test]
fn criterion_3_class_chains() {
    gate(acceptance::class_chains());
}

#[test]
fn criterion_4_bijection_construction() {
    gate(acceptance::bijection_construction());
}

#[test]
fn criterion_5_surjective_bounds() {
    gate(acceptance::surjective_bounds());
}

#[test]
fn criterion_6_pipeline_guarantee() {
    gate(acceptance::pipeline_guarantee());
}

#[test]
fn criterion_7_witness_extraction() {
    gate(acceptance::witness_extraction());
}

#[test]
fn criterion_8_engineering_targets() {
    gate(acceptance::engineering_targets());
}
