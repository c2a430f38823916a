use std::io::Write;

use zetalab::verify::{run_criterion, VerifyOptions, CRITERIA};

fn check(id: u32) {
    let r = run_criterion(id, &VerifyOptions::default()).unwrap();
    // Uncaptured, so the line shows without --nocapture.
    let _ = writeln!(std::io::stderr(), "{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_01_price_theorem() {
    check(1);
}

#[test]
fn criterion_02_lemma2_sign_corrected() {
    check(2);
}

#[test]
fn criterion_03_theta_functional_identity() {
    check(3);
}

#[test]
fn criterion_04_oracle_agreement() {
    check(4);
}

#[test]
fn criterion_05_interpolation_identity() {
    check(5);
}

#[test]
fn criterion_06_zeta_zeros() {
    check(6);
}

#[test]
fn criterion_07_divergence_exponent() {
    check(7);
}

#[test]
fn criterion_08_character_suite() {
    check(8);
}

#[test]
fn criterion_09_l_integral_definitions() {
    check(9);
}

#[test]
fn criterion_10_continuation_residual_stability() {
    check(10);
}

#[test]
fn criterion_11_chi4_first_zero() {
    check(11);
}

#[test]
fn criterion_12_parameter_algebra() {
    check(12);
}

#[test]
fn criterion_13_trajectory_symmetry_and_envelope() {
    check(13);
}

#[test]
fn criterion_14_concentration() {
    check(14);
}

#[test]
fn criterion_15_conjugate_sums() {
    check(15);
}

#[test]
fn every_criterion_has_a_runner() {
    assert_eq!(CRITERIA.len(), 15);
    for (i, (id, _)) in CRITERIA.iter().enumerate() {
        assert_eq!(*id as usize, i + 1);
    }
}
