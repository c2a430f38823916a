use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zetalab::numerics::{complex_gamma, integrate_singular, zeta_oracle, real_pow, QuadratureConfig};
use zetalab::theta::psi;
use zetalab::zeta::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

#[test]
fn completed_zeta_at_two() {
    let v = phi_oracle(c(2.0, 0.0), &cfg()).unwrap();
    assert!((v - c(PI / 6.0, 0.0)).norm() < 1e-12, "{v}");
}

#[test]
fn reflection_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let s = c(rng.random_range(-2.0..3.0), rng.random_range(-30.0..30.0));
        let a = phi_oracle(s, &cfg()).unwrap();
        let b = phi_oracle(1.0 - s, &cfg()).unwrap();
        assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0), "s={s}");
    }
}

#[test]
fn theta_integral_matches_gamma_zeta_product() {
    for i in 0..9 {
        for j in 0..13 {
            let s = c(0.1 + 0.1 * i as f64, 2.5 * j as f64);
            let a = phi_oracle(s, &cfg()).unwrap();
            let b = phi_product(s).unwrap();
            assert!((a - b).norm() < 1e-9, "s={s} {a} {b}");
        }
    }
}

#[test]
fn xi_real_and_symmetric_on_critical_line() {
    for k in 0..20 {
        let s = c(0.5, 1.7 * k as f64);
        let v = xi(s, &cfg()).unwrap();
        assert!(v.im.abs() <= 1e-12 * v.norm().max(1e-6), "s={s} {v}");
        let w = xi(c(0.3, 1.7 * k as f64), &cfg()).unwrap();
        let m = xi(c(0.7, -1.7 * k as f64), &cfg()).unwrap();
        assert!((w - m).norm() <= 1e-12 * w.norm().max(1e-3));
    }
}

#[test]
fn continued_integral_agrees_with_convergent_integral() {
    let tight = QuadratureConfig::with_tolerance(1e-13);
    for &w in &[0.0, 3.0, 14.0] {
        let s = c(1.5, w);
        let raw = integrate_singular(
            |y| real_pow(y, s / 2.0 - 1.0) * psi(y, 1e-18).unwrap().value.re,
            0.0,
            1.0,
            &tight,
        )
        .unwrap();
        let cont = strip_integral_continued(s, &cfg()).unwrap();
        assert!(!cont.regularized);
        assert!((raw.value - cont.value).norm() < 1e-9, "s={s}");
    }
}

#[test]
fn strip_integral_rejects_points_off_strip() {
    assert!(strip_integral_regularized(c(1.5, 0.0), &cfg()).is_err());
    assert!(strip_integral_regularized(c(0.0, 3.0), &cfg()).is_err());
    assert!(strip_integral_regularized(c(0.4, 3.0), &cfg()).unwrap().regularized);
}

#[test]
fn generator_conjugate_symmetry() {
    let s = c(0.3, 7.0);
    let a = generator_z(s, &cfg()).unwrap().value;
    let b = generator_z(s.conj(), &cfg()).unwrap().value;
    assert!((a - b.conj()).norm() < 1e-13);
}

#[test]
fn interpolation_reproduces_completed_zeta() {
    for i in 0..9 {
        for j in 0..13 {
            let s = c(0.1 + 0.1 * i as f64, 2.5 * j as f64);
            let a = interpolate_phi(s, &cfg()).unwrap();
            let b = phi_product(s).unwrap();
            assert!((a - b).norm() < 1e-9, "s={s}");
        }
    }
}

#[test]
fn single_term_generator_matches_quadrature() {
    let s = c(0.6, 4.0);
    let q = integrate_singular(
        |y| real_pow(y, s / 2.0 - 1.0) * (-PI * y).exp(),
        0.0,
        1.0,
        &QuadratureConfig::with_tolerance(1e-13),
    )
    .unwrap();
    let expected = -4.0 / PI.sqrt() * (s * q.value + 1.0);
    let got = generator_zn_partial(s, 1).unwrap();
    assert!((got - expected).norm() < 1e-10, "{got} {expected}");
}

#[test]
fn finite_generator_tail_identity() {
    // z − z_N ≈ −(4/√π) s π^{−s/2} Γ(s/2) ζ(s, N+1) for Re s > 1 once N²π is large.
    for &(s, n) in &[(c(1.5, 0.0), 50u64), (c(2.5, 3.0), 20)] {
        let z = generator_z_continued(s, &cfg()).unwrap().value;
        let zn = generator_zn_partial(s, n).unwrap();
        let tail = -4.0 / PI.sqrt()
            * s
            * real_pow(PI, -s / 2.0)
            * complex_gamma(s / 2.0).unwrap()
            * (zeta_oracle(s).unwrap() - (1..=n).map(|k| real_pow(k as f64, -s)).sum::<Complex64>());
        assert!((z - zn - tail).norm() < 1e-9, "s={s}");
    }
}

#[test]
fn finite_generator_converges_far_right() {
    let s = c(10.5, 0.0);
    let z = generator_z_continued(s, &cfg()).unwrap().value;
    let zn = generator_zn_partial(s, 50).unwrap();
    assert!((z - zn).norm() < 1e-8, "{z} {zn}");
}

#[test]
fn finite_generator_growth_exponent() {
    let n_list = [100u64, 200, 400, 800, 1600];
    for &re in &[0.3, 0.5, 0.7] {
        let e = divergence_exponent(c(re, 10.0), &n_list).unwrap();
        assert!((e - (1.0 - re)).abs() < 0.05, "Re s={re} exponent={e}");
    }
    let e = divergence_exponent(c(1.5, 10.0), &n_list).unwrap();
    assert!(e < 0.0);
}

#[test]
fn fixed_base_estimator_is_biased_low() {
    let n_list = [100u64, 200, 400, 800, 1600];
    let fit = divergence_exponent_with(c(0.7, 10.0), &n_list, DivergenceEstimator::FixedBase).unwrap();
    let cons = divergence_exponent(c(0.7, 10.0), &n_list).unwrap();
    assert!((cons - 0.3).abs() < (fit.exponent - 0.3).abs());
}

#[test]
fn sequence_matches_partial_sums() {
    let s = c(0.4, 2.0);
    let seq = generator_zn_sequence(s, &[1, 3, 9]).unwrap();
    for (k, &n) in [1u64, 3, 9].iter().enumerate() {
        assert!((seq[k] - generator_zn_partial(s, n).unwrap()).norm() < 1e-14);
    }
    assert!(generator_zn_sequence(s, &[3, 3]).is_err());
}

#[test]
fn first_three_zeros() {
    let zeros = scan_zeros(10.0, 30.0, 0.25, 1e-9).unwrap();
    let expected = [14.1347251417346938, 21.0220396387715550, 25.0108575801456888];
    assert_eq!(zeros.len(), 3, "{zeros:?}");
    for (z, e) in zeros.iter().zip(expected) {
        assert!((z - e).abs() < 1e-6, "{z} vs {e}");
    }
    assert!(scan_zeros(0.0, 10.0, 0.25, 1e-9).unwrap().is_empty());
}

#[test]
fn phi_vanishes_at_scanned_zeros() {
    for w in scan_zeros(10.0, 30.0, 0.05, 1e-10).unwrap() {
        let phi = phi_oracle(c(0.5, w), &cfg()).unwrap();
        assert!(phi.norm() < 1e-6, "|phi| = {} at {w}", phi.norm());
    }
}

#[test]
fn generator_antisymmetry_at_first_zero() {
    let s = c(0.5, 14.134725141734694);
    let a = generator_z(s, &cfg()).unwrap().value / s;
    let b = generator_z(1.0 - s, &cfg()).unwrap().value / (1.0 - s);
    assert!((a + b).norm() < 1e-5, "{}", (a + b).norm());
}

#[test]
fn zeros_up_to_scan_cap() {
    let expected = [
        14.134725141734694, 21.022039638771555, 25.010857580145689, 30.424876125859513,
        32.935061587739190, 37.586178158825671, 40.918719012147495, 43.327073280914999,
        48.005150881167160, 49.773832477672302, 52.970321477714460, 56.446247697063394,
        59.347044002602353,
    ];
    let zeros = scan_zeros(10.0, MAX_SCAN_HEIGHT, 0.05, 1e-12).unwrap();
    assert_eq!(zeros.len(), expected.len(), "{zeros:?}");
    for (z, e) in zeros.iter().zip(expected) {
        assert!((z - e).abs() < 1e-9, "{z} vs {e}");
    }
    assert!(scan_zeros(10.0, 61.0, 0.05, 1e-9).is_err());
}
