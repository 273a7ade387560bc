//! Acceptance gate: one test per verification criterion, each printing its
//! pass/fail line. `belyi-lab verify` runs the same checks from the CLI.

use belyi_lab::verify;

fn assert_criterion(c: verify::CriterionResult) {
    println!("{}", c.line());
    assert!(c.passed, "{}", c.line());
}

#[test]
fn criterion_01_reference_product_exactness() {
    assert_criterion(verify::criterion_1());
}

#[test]
fn criterion_02_cube_fixtures() {
    assert_criterion(verify::criterion_2());
}

#[test]
fn criterion_03_representation_engine() {
    assert_criterion(verify::criterion_3());
}

#[test]
fn criterion_04_reference_table() {
    assert_criterion(verify::criterion_4());
}

#[test]
fn criterion_05_rim_hook_magnitude_identity() {
    assert_criterion(verify::criterion_5());
}

#[test]
fn criterion_06_rim_hook_count_bound() {
    assert_criterion(verify::criterion_6());
}

#[test]
fn criterion_07_mixing_exactness_and_bound() {
    assert_criterion(verify::criterion_7());
}

#[test]
fn criterion_08_monte_carlo_consistency() {
    assert_criterion(verify::criterion_8());
}

#[test]
fn criterion_09_face_count_moments() {
    assert_criterion(verify::criterion_9());
}

#[test]
fn criterion_10_largest_face_ratio() {
    assert_criterion(verify::criterion_10());
}

#[test]
fn criterion_11_poisson_dirichlet_convergence() {
    assert_criterion(verify::criterion_11());
}

#[test]
fn criterion_12_spectral_density() {
    assert_criterion(verify::criterion_12());
}

#[test]
fn criterion_13_property_suites() {
    assert_criterion(verify::criterion_13());
}
