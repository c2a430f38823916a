use std::f64::consts::PI;

use num_complex::Complex64;
use zetalab::dynamics::*;
use zetalab::gaussian::{expectation, expectation_group, GaussianSpec, SignedSpecGroup};
use zetalab::numerics::{erf_real, integrate_pieces, QuadratureConfig, RngSeed};

fn pt(sigma: f64, omega: f64) -> CenteredPoint {
    CenteredPoint::new(sigma, omega).unwrap()
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

#[test]
fn correlation_schedule() {
    assert_eq!(rho_of_t(0.0).unwrap(), 0.0);
    assert!((rho_of_t(2f64.ln()).unwrap() - 0.5).abs() < 1e-16);
    assert!(rho_of_t(-0.1).is_err());
    assert!(rho_of_t(40.5).is_err());
    // 1 − e^{−40} rounds to 1 in binary64; the complement keeps the information.
    assert_eq!(rho_of_t(40.0).unwrap(), 1.0);
    assert!((rho_complement(40.0).unwrap() - (-40f64).exp()).abs() == 0.0);
    let mut last = -1.0;
    for i in 0..400 {
        let r = rho_of_t(i as f64 * 0.05).unwrap();
        assert!(r > last && r < 1.0);
        last = r;
    }
}

#[test]
fn parameters_by_independent_transcription() {
    let q = dyn_params(&pt(0.25, 1.0), Branch::Riemann);
    assert!((q.gamma_alpha - 0.25 / 1.0625).abs() < 1e-16);
    assert!((q.omega_alpha - 1.0 / 1.0625).abs() < 1e-16);
    assert!((q.gamma_beta - 0.48).abs() < 1e-16);
    assert!((q.omega_beta - 0.64).abs() < 1e-16);

    let o = dyn_params(&pt(0.25, 1.0), Branch::DirichletOdd);
    assert!((o.gamma_alpha - 1.25 / (1.5625 + 1.0)).abs() < 1e-16);
    assert!((o.gamma_beta - 1.75 / (3.0625 + 1.0)).abs() < 1e-16);

    let e = dyn_params(&pt(0.3, 0.4), Branch::Riemann);
    assert!((e.gamma_alpha - 1.0).abs() < 1e-15 && (e.gamma_beta - 1.0).abs() < 1e-15);
    assert!((e.omega_alpha - 2.0).abs() < 1e-15 && (e.omega_beta - 0.5).abs() < 1e-15);

    for w in [-3.0, 0.1, 7.0] {
        let q = dyn_params(&pt(0.0, w), Branch::Riemann);
        assert_eq!(q.gamma_alpha, q.gamma_beta);
        assert_eq!(q.omega_alpha, q.omega_beta);
    }
}

#[test]
fn means_start_at_scaled_index_and_decay_at_the_predicted_rate() {
    let p = pt(0.2, 3.0);
    let q = dyn_params(&p, Branch::Riemann);
    for n in 1..=4 {
        let a0 = alpha_n_t(n, &p, Branch::Riemann, 0.0).unwrap();
        assert!((a0 - Complex64::new(2.0 * PI.sqrt() * n as f64, 0.0)).norm() < 1e-14);
        let b0 = beta_n_t(n, &p, Branch::Riemann, 0.0).unwrap();
        assert!((b0 - a0).norm() < 1e-14);
    }
    let ts: Vec<f64> = (0..=100).map(|i| i as f64 * 0.1).collect();
    let fit = |f: &dyn Fn(f64) -> f64| {
        let y: Vec<f64> = ts.iter().map(|&t| f(t).ln()).collect();
        let n = ts.len() as f64;
        let mx = ts.iter().sum::<f64>() / n;
        let my = y.iter().sum::<f64>() / n;
        let sxy: f64 = ts.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
        let sxx: f64 = ts.iter().map(|a| (a - mx) * (a - mx)).sum();
        sxy / sxx
    };
    let ra = fit(&|t| alpha_n_t(2, &p, Branch::Riemann, t).unwrap().norm());
    let rb = fit(&|t| beta_n_t(2, &p, Branch::Riemann, t).unwrap().norm());
    assert!((ra + (1.0 + q.gamma_alpha) / 2.0).abs() < 1e-6);
    assert!((rb + (1.0 + q.gamma_beta) / 2.0).abs() < 1e-6);
}

#[test]
fn mirror_means_are_conjugates_on_the_line() {
    let p = pt(0.0, 4.5);
    for &t in &[0.3, 2.0, 9.0, 33.0] {
        for n in 1..=3 {
            let a = alpha_n_t(n, &p, Branch::Riemann, t).unwrap();
            let b = beta_n_t(n, &p, Branch::Riemann, t).unwrap();
            assert!((a.conj() - b).norm() <= 1e-15 * a.norm());
        }
    }
}

fn j_oracle_real(m: f64, k: f64) -> f64 {
    (-k * m * m).exp() / k + m * (PI / k).sqrt() * erf_real(m * k.sqrt())
}

#[test]
fn closed_form_matches_real_oracle_and_quadrature() {
    for &k in &[0.25, 1.0, 7.3, 400.0] {
        for &m in &[0.0, 0.3, -1.1, 2.5] {
            let c = j_closed_form(Complex64::new(m, 0.0), k).unwrap();
            assert!((c.re - j_oracle_real(m, k)).abs() < 1e-13 * c.re.max(1e-3), "k={k} m={m}");
            assert!(c.im.abs() < 1e-15);
        }
    }
    for &(m, k) in &[(Complex64::new(0.7, 0.4), 2.0), (Complex64::new(-0.2, 0.9), 1.5), (Complex64::new(1.0, -1.0), 0.8)] {
        let c = j_closed_form(m, k).unwrap();
        let q = j_quadrature(m, k, &cfg()).unwrap().value;
        // independent oracle: plain quadrature in x on a wide finite window
        let r = integrate_pieces(
            |x| x.abs() * (-(Complex64::new(x, 0.0) - m).powu(2) * k).exp(),
            &[-30.0, m.re.min(0.0), m.re.max(0.0), 30.0],
            &QuadratureConfig::with_tolerance(1e-13),
        )
        .unwrap()
        .value;
        assert!((c - q).norm() < 1e-10 * c.norm(), "m={m}");
        assert!((c - r).norm() < 1e-10 * c.norm(), "m={m}");
    }
}

#[test]
fn base_term_is_twice_the_centered_expectation() {
    for &t in &[0.0, 0.7, 3.0, 9.0] {
        let z = (t / 2.0f64).exp() / PI.sqrt() * j_closed_form(Complex64::new(0.0, 0.0), t.exp() / 4.0).unwrap();
        assert!((z.re - 4.0 * (-t / 2.0f64).exp() / PI.sqrt()).abs() < 1e-14);
        let q = (t / 2.0f64).exp() / PI.sqrt() * j_quadrature(Complex64::new(0.0, 0.0), t.exp() / 4.0, &cfg()).unwrap().value;
        assert!((q - z).norm() < 1e-10);
    }
    let t = 0.7;
    let spec = GaussianSpec::real(0.0, 0.0, rho_of_t(t).unwrap()).unwrap();
    let e = expectation(|a, b| (a - b).abs(), &spec, &cfg()).unwrap().value.re;
    assert!((e - 2.0 * (-t / 2.0f64).exp() / PI.sqrt()).abs() < 1e-9);
}

#[test]
fn trajectory_matches_grouped_gaussian_expectations() {
    let p = pt(0.2, 1.5);
    let t = 0.8;
    let rho = rho_of_t(t).unwrap();
    let n_max = 2;
    let centered = GaussianSpec::real(0.0, 0.0, rho).unwrap();
    let mut expected = 2.0 * expectation(|a, b| (a - b).abs(), &centered, &cfg()).unwrap().value;
    for n in 1..=n_max {
        let alpha = alpha_n_t(n, &p, Branch::Riemann, t).unwrap();
        let g = SignedSpecGroup::four_shift(alpha, rho).unwrap();
        expected += expectation_group(|a, b| (a - b).abs(), &g, &cfg()).unwrap().value;
    }
    let got = zn_t(&p, Branch::Riemann, false, n_max, t).unwrap();
    assert!((got - expected).norm() < 1e-7 * expected.norm(), "{got} {expected}");
}

#[test]
fn forward_and_mirror_magnitudes_agree_on_the_line() {
    for &w in &[1.0, 14.134725] {
        let p = pt(0.0, w);
        for n in [1u64, 4, 8] {
            for t in [0.0, 1.0, 5.0, 10.0] {
                let a = zn_t(&p, Branch::Riemann, false, n, t).unwrap();
                let b = zn_t(&p, Branch::Riemann, true, n, t).unwrap();
                assert!((a.norm() - b.norm()).abs() <= 1e-9 * a.norm(), "N={n} t={t}");
                assert!((a.conj() - b).norm() <= 1e-12 * a.norm());
            }
        }
    }
}

#[test]
fn quadrature_route_agrees_when_magnification_is_small() {
    let p = pt(0.1, 0.8);
    for &(n, t) in &[(1u64, 0.0), (3, 1.0), (2, 3.0)] {
        let a = zn_t(&p, Branch::Riemann, false, n, t).unwrap();
        let b = zn_t_quadrature(&p, Branch::Riemann, false, n, t, &cfg()).unwrap().value;
        assert!((a - b).norm() < 1e-9 * a.norm(), "N={n} t={t}");
    }
}

#[test]
fn single_shift_forms_agree() {
    let p = pt(0.25, 2.0);
    let t = 3.0;
    let closed = in_t(1, &p, Branch::Riemann, t, 1, InMethod::Closed, &cfg()).unwrap();
    assert!(closed.magnification < 10.0);
    for m in [InMethod::Direct, InMethod::Factored] {
        for sign in [1, -1] {
            let v = in_t(1, &p, Branch::Riemann, t, sign, m, &cfg()).unwrap();
            assert!((v.value - closed.value).norm() < 1e-9 * closed.value.norm(), "{m:?} {sign}");
        }
    }
    let minus = in_t(1, &p, Branch::Riemann, t, -1, InMethod::Closed, &cfg()).unwrap();
    assert!((minus.value.norm() - closed.value.norm()).abs() < 1e-14 * closed.value.norm());
    assert!(in_t(1, &p, Branch::Riemann, t, 0, InMethod::Closed, &cfg()).is_err());
}

#[test]
fn width_term_dominates_at_large_time() {
    // Means shrink like e^{−(1+γ)t/2} while the spread shrinks like e^{−t/2}.
    let p = pt(0.0, 1.0);
    let n = 3;
    let t = 40.0;
    let z = zn_t(&p, Branch::Riemann, false, n, t).unwrap();
    let width = (1.0 + 2.0 * n as f64) * 4.0 * (-t / 2.0f64).exp() / PI.sqrt();
    assert!((z.norm() / width - 1.0).abs() < 1e-5);
    let means: f64 = (1..=n).map(|i| 2.0 * alpha_n_t(i, &p, Branch::Riemann, t).unwrap().re.abs()).sum();
    assert!(means < 1e-3 * z.norm());
}

#[test]
fn model_ratio_identities() {
    let p0 = pt(0.0, 2.0);
    let q0 = dyn_params(&p0, Branch::Riemann);
    for i in 0..200 {
        assert_eq!(model_ratio(&q0, i as f64 * 0.2), 1.0);
    }
    let p = pt(0.25, 2.0);
    let q = dyn_params(&p, Branch::Riemann);
    for &t in &[0.5, 3.0, 11.0] {
        let closed = ((q.gamma_beta - q.gamma_alpha) * t / 2.0).exp() * (q.omega_alpha * t / 2.0).cos().abs()
            / (q.omega_beta * t / 2.0).cos().abs();
        for n in [1u64, 5] {
            assert!((mean_ratio(&p, Branch::Riemann, n, t).unwrap() - closed).abs() < 1e-12 * closed);
        }
    }
}

#[test]
fn envelope_rate_off_the_line() {
    let p = pt(0.25, 2.0);
    let ts: Vec<f64> = (0..=600).map(|i| i as f64 * 0.05).collect();
    let fit = envelope_rate(&p, Branch::Riemann, &ts).unwrap();
    assert!((fit.rate - fit.expected).abs() < 0.05 * fit.expected.abs());
    assert!(fit.samples_used < ts.len());
    let samples = ratio_trajectory(&p, Branch::Riemann, 4, &ts).unwrap();
    assert!(samples.iter().any(|s| s.flagged));
    for s in &samples {
        assert!(s.ratio >= 0.0);
        assert_eq!(s.rho_complement, (-s.t).exp());
    }
}

#[test]
fn trajectory_grid_validation() {
    let p = pt(0.1, 1.0);
    assert!(ratio_trajectory(&p, Branch::Riemann, 2, &[]).is_err());
    assert!(ratio_trajectory(&p, Branch::Riemann, 2, &[1.0, 1.0]).is_err());
    assert!(ratio_trajectory(&p, Branch::Riemann, 0, &[1.0]).is_err());
}

#[test]
fn concentration_bound_holds_on_the_tested_points() {
    let p = pt(0.1, 2.0);
    for (i, &t) in [2.0, 4.0, 6.0].iter().enumerate() {
        for (j, &eps) in [0.05, 0.1].iter().enumerate() {
            let r = concentration_check(t, eps, 1, &p, Branch::Riemann, 100_000, RngSeed::new(2024, (3 * i + j) as u64)).unwrap();
            assert!(r.satisfied, "t={t} eps={eps} {r:?}");
            assert!((r.empirical_probability - r.exact_probability).abs() < 5e-3);
        }
    }
}

#[test]
fn concentration_edge_cases() {
    let p = pt(0.0, 1.0);
    let wide = concentration_check(1.0, 1e3, 1, &p, Branch::Riemann, 1000, RngSeed::new(1, 0)).unwrap();
    assert_eq!(wide.empirical_probability, 1.0);
    assert!(wide.bound > 0.999_999);
    let start = concentration_check(0.0, 0.1, 1, &p, Branch::Riemann, 1000, RngSeed::new(1, 0)).unwrap();
    assert!(start.bound < 0.0 && start.satisfied);
    let a = concentration_check(3.0, 0.1, 2, &p, Branch::Riemann, 5000, RngSeed::new(9, 4)).unwrap();
    let b = concentration_check(3.0, 0.1, 2, &p, Branch::Riemann, 5000, RngSeed::new(9, 4)).unwrap();
    assert_eq!(a, b);
    assert!(concentration_check(3.0, 0.1, 2, &p, Branch::Riemann, 999, RngSeed::new(9, 4)).is_err());
}

#[test]
fn concentration_bound_fails_once_the_spread_is_small() {
    // With variance 2e^{−t} the exact probability is erf(u/2), u = ε e^{t/2},
    // which falls below 1 − 2e^{−u²/2} for u above about 2.7.
    let p = pt(0.0, 1.0);
    let r = concentration_check(8.0, 0.1, 1, &p, Branch::Riemann, 100_000, RngSeed::new(77, 0)).unwrap();
    assert!(r.exact_probability < r.bound);
    assert!(!r.satisfied);
}

#[test]
fn exact_algebra_on_the_rational_grid() {
    let g = exact_grid_check(100, Branch::Riemann).unwrap();
    assert_eq!(g.points, 99 * 100);
    assert!(g.iff_violations.is_empty());
    assert_eq!(g.exceptional.len(), 16);
    assert!(g.exceptional.contains(&(0.3, 0.4)));
    for &(s, w) in &g.exceptional {
        assert!((w * w - (0.25 - s * s)).abs() < 1e-12);
    }
    let odd = exact_grid_check(100, Branch::DirichletOdd).unwrap();
    assert!(odd.iff_violations.is_empty() && odd.exceptional.is_empty());
}

#[test]
fn exact_conditions_on_named_points() {
    let r = |n, d| Rational::new(n, d);
    let c = exact_conditions(r(3, 10), r(2, 5), Branch::Riemann);
    assert!(c.gamma_equal && !c.omega_equal && c.exceptional && !c.joint);
    let c = exact_conditions(r(0, 1), r(7, 3), Branch::Riemann);
    assert!(c.joint && !c.exceptional);
    let c = exact_conditions(r(1, 4), r(1, 1), Branch::Riemann);
    assert!(!c.gamma_equal && !c.omega_equal);
}

#[test]
fn boundedness_classification() {
    let grid = [pt(0.0, 1.0), pt(0.0, 5.0), pt(0.25, 1.0), pt(0.3, 0.4)];
    let rec = boundedness_report(&grid, Branch::Riemann, 2, 30.0).unwrap();
    assert!(rec[0].bounded && rec[0].joint_condition && rec[0].rate == 0.0);
    assert!(rec[1].bounded && rec[1].joint_condition);
    let q = dyn_params(&grid[2], Branch::Riemann);
    assert!(!rec[2].bounded);
    assert!((rec[2].rate - 2.0 * (q.gamma_beta - q.gamma_alpha)).abs() < 1e-9);
    assert!(rec[3].bounded && rec[3].exceptional && !rec[3].joint_condition);
}
