use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zetalab::dirichlet::{enumerate_characters, primitive_characters, Parity};
use zetalab::theta::{psi, psi_chi, psi_chi_tilde, psi_functional_residual};

fn reference_sum(y: f64, terms: usize, coef: impl Fn(u64) -> f64) -> f64 {
    (1..=terms as u64)
        .rev()
        .map(|n| coef(n) * (-std::f64::consts::PI * (n * n) as f64 * y).exp())
        .sum()
}

#[test]
fn truncation_bound_is_honest() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let y = 10f64.powf(rng.random_range(-1.0..1.5));
        let tol = 10f64.powf(rng.random_range(-15.0..-4.0));
        let v = psi(y, tol).unwrap();
        let long = reference_sum(y, v.terms_used + 5, |_| 1.0);
        assert!(v.truncation_bound <= tol);
        assert!((v.value.re - long).abs() <= tol + 1e-15, "y={y} tol={tol}");
    }
}

#[test]
fn functional_identity_on_log_grid() {
    for k in 0..50 {
        let y = 0.05 * (400f64).powf(k as f64 / 49.0);
        let r = psi_functional_residual(y).unwrap();
        assert!(r < 1e-12, "y={y} residual={r}");
    }
}

#[test]
fn first_term_dominates_at_one() {
    let v = psi(1.0, 1e-17).unwrap().value.re;
    let e = (-std::f64::consts::PI).exp();
    assert!((v - e).abs() < 2e-5 && v > e);
}

#[test]
fn far_argument_is_negligible() {
    assert!(psi(50.0, 1e-18).unwrap().value.norm() < 1e-15);
}

#[test]
fn small_argument_asymptotics() {
    let y = 1e-4;
    let v = psi(y, 1e-14).unwrap().value.re;
    assert!((v - (0.5 / y.sqrt() - 0.5)).abs() < 1e-12);
}

#[test]
fn character_theta_dominated_by_psi() {
    for p in 1..=12 {
        for chi in enumerate_characters(p).unwrap() {
            for &y in &[0.003, 0.02, 0.1, 0.7, 3.0] {
                let a = psi_chi(y, &chi, 1e-16).unwrap().value.norm();
                let b = psi(y, 1e-16).unwrap().value.re;
                assert!(a <= b + 1e-12, "P={p} label={} y={y}", chi.label);
            }
        }
    }
}

#[test]
fn mod_four_signed_sum() {
    let chi = &enumerate_characters(4).unwrap()[1];
    assert_eq!(chi.parity, Parity::Odd);
    for &y in &[0.05, 0.3, 1.0] {
        let expected = reference_sum(y, 400, |n| match n % 4 {
            1 => n as f64,
            3 => -(n as f64),
            _ => 0.0,
        }) * y.sqrt();
        let got = psi_chi_tilde(y, chi, 1e-16).unwrap().value;
        assert!((got - Complex64::new(expected, 0.0)).norm() < 1e-13, "y={y}");
    }
}

#[test]
fn even_transform_matches_direct_sums() {
    for p in [5u64, 8, 12, 13] {
        for chi in primitive_characters(p).unwrap() {
            if chi.parity != Parity::Even {
                continue;
            }
            let y = 0.5 / (p * p) as f64;
            let got = psi_chi(y, &chi, 1e-15).unwrap().value;
            let direct: Complex64 = (1..=2000u64)
                .rev()
                .map(|n| chi.value(n as i64) * (-std::f64::consts::PI * (n * n) as f64 * y).exp())
                .sum();
            assert!((got - direct).norm() < 1e-11, "P={p} label={}", chi.label);
        }
    }
}

#[test]
fn odd_transform_matches_direct_sums() {
    for p in [3u64, 5, 7, 11] {
        for chi in primitive_characters(p).unwrap() {
            if chi.parity != Parity::Odd {
                continue;
            }
            let y = 0.3 / (p * p) as f64;
            let got = psi_chi_tilde(y, &chi, 1e-15).unwrap().value;
            let direct: Complex64 = (1..=3000u64)
                .rev()
                .map(|n| {
                    chi.value(n as i64)
                        * (n as f64 * (-std::f64::consts::PI * (n * n) as f64 * y).exp())
                })
                .sum::<Complex64>()
                * y.sqrt();
            assert!((got - direct).norm() < 1e-10, "P={p} label={}", chi.label);
        }
    }
}

#[test]
fn invalid_arguments_rejected() {
    assert!(psi(0.0, 1e-10).is_err());
    assert!(psi(-1.0, 1e-10).is_err());
    assert!(psi(1.0, 0.0).is_err());
    assert!(psi(f64::NAN, 1e-10).is_err());
}
