use proptest::prelude::*;
use zetalab::dirichlet::enumerate_characters;
use zetalab::numerics::{complex_gamma, QuadratureConfig};
use zetalab::theta::psi_functional_residual;
use zetalab::zeta::{phi_oracle_with_error, phi_product};
use zetalab::Complex64;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_recurrence(re in 0.1f64..6.0, im in -15.0f64..15.0) {
        let z = Complex64::new(re, im);
        let lhs = complex_gamma(z + 1.0).unwrap();
        let rhs = z * complex_gamma(z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm(), "{lhs} vs {rhs}");
    }

    #[test]
    fn characters_are_completely_multiplicative(q in 2u64..60, m in 1i64..500, n in 1i64..500) {
        for chi in enumerate_characters(q).unwrap() {
            let lhs = chi.value(m * n);
            let rhs = chi.value(m) * chi.value(n);
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn characters_are_periodic(q in 2u64..60, n in -500i64..500) {
        for chi in enumerate_characters(q).unwrap() {
            prop_assert_eq!(chi.value(n), chi.value(n + q as i64));
        }
    }

    #[test]
    fn theta_functional_identity(y in 0.01f64..100.0) {
        let r = psi_functional_residual(y).unwrap();
        prop_assert!(r <= 1e-12 * (1.0 + y.sqrt()), "residual {r} at y = {y}");
    }

    #[test]
    fn completed_zeta_reflection(sigma in -0.45f64..0.45, omega in 0.5f64..40.0) {
        let s = Complex64::new(0.5 - sigma, omega);
        let a = phi_product(s).unwrap();
        let b = phi_product(1.0 - s).unwrap();
        prop_assert!((a - b).norm() <= 1e-10 * a.norm().max(1e-300));
    }

    #[test]
    fn oracle_matches_product(sigma in -0.45f64..0.45, omega in 0.5f64..30.0) {
        let s = Complex64::new(0.5 - sigma, omega);
        let cfg = QuadratureConfig::default();
        let (a, err) = phi_oracle_with_error(s, &cfg).unwrap();
        let b = phi_product(s).unwrap();
        prop_assert!((a - b).norm() <= err + 1e-12 * a.norm(), "{a} vs {b}, estimate {err:e}");
    }
}
