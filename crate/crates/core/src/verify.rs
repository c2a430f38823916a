//! Acceptance checks, one runner per criterion.

use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dirichlet::{
    conjugate_sums, enumerate_characters, gauss_sum, integral_definition, phi_paper, phi_reference,
    primitive_characters, scan_l_zeros, totient, Parity, ScanFormula,
};
use crate::dynamics::{
    concentration_check, envelope_rate, exact_grid_check, zn_t, Branch, CenteredPoint,
};
use crate::error::{Error, Result};
use crate::gaussian::{
    group_rho_derivative, lemma2_rhs, price_check, GaussianSpec, Nonlinearity, PriceCheck,
    SignedSpecGroup,
};
use crate::numerics::{QuadratureConfig, RngSeed};
use crate::theta::psi_functional_residual;
use crate::zeta::{divergence_exponent, interpolate_phi, phi_oracle, phi_product, scan_zeros};

/// Reference ordinates of the first three zeta zeros.
pub const ZETA_ZEROS: [f64; 3] = [14.134725141734694, 21.022039638771555, 25.010857580145689];

/// Reference ordinate of the first zero of the odd character mod 4.
pub const CHI4_FIRST_ZERO: f64 = 6.020948904697597;

pub const CRITERIA: [(u32, &str); 15] = [
    (1, "price theorem"),
    (2, "lemma 2 sign-corrected derivative"),
    (3, "theta functional identity"),
    (4, "oracle agreement"),
    (5, "interpolation identity"),
    (6, "zeta zero reproduction"),
    (7, "finite-N divergence exponent"),
    (8, "character suite"),
    (9, "L integral definitions"),
    (10, "continuation residual stability"),
    (11, "first zero of chi mod 4"),
    (12, "dynamics parameter algebra"),
    (13, "trajectory symmetry and envelope"),
    (14, "concentration bound"),
    (15, "conjugate-sum identity"),
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub cfg: QuadratureConfig,
    pub seed: u64,
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cfg: QuadratureConfig::default(),
            seed: 20240521,
            samples: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    /// Worst observed value of the checked quantity.
    pub metric: f64,
    pub threshold: f64,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {:<36} metric={:.3e} threshold={:.1e} ({:.1}s) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.metric,
            self.threshold,
            self.seconds,
            self.detail
        )
    }
}

fn worst(acc: &mut f64, v: f64) {
    if v.is_nan() || v > *acc {
        *acc = if v.is_nan() { f64::INFINITY } else { v };
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceCase {
    pub nonlinearity: String,
    pub rho: f64,
    pub mean: Complex64,
    pub m1_rate: Complex64,
    pub m2_rate: Complex64,
    pub check: PriceCheck,
}

/// Means `(m, −m)` moving at rates `(0.25, −0.4)` per unit of ρ.
pub fn price_cases(cfg: &QuadratureConfig) -> Result<Vec<PriceCase>> {
    let (r1, r2) = (c(0.25, 0.0), c(-0.4, 0.0));
    let mut out = Vec::new();
    for nl in Nonlinearity::all() {
        for &rho in &[-0.5, 0.0, 0.3, 0.8] {
            for &m in &[c(0.0, 0.0), c(0.5, 0.0), c(0.0, 0.5)] {
                let spec = GaussianSpec::new(m, -m, rho)?;
                out.push(PriceCase {
                    nonlinearity: nl.name.to_string(),
                    rho,
                    mean: m,
                    m1_rate: r1,
                    m2_rate: r2,
                    check: price_check(&nl, &spec, r1, r2, 1e-4, cfg)?,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma2Case {
    pub alpha: f64,
    pub rho: f64,
    pub finite_difference: Complex64,
    pub closed_form: Complex64,
    pub residual: f64,
}

pub fn lemma2_cases(cfg: &QuadratureConfig) -> Result<Vec<Lemma2Case>> {
    let mut out = Vec::new();
    for &alpha in &[0.0, 0.5, 1.0] {
        for &rho in &[0.0, 0.3, 0.7] {
            let g = SignedSpecGroup::four_shift(c(alpha, 0.0), rho)?;
            let fd = group_rho_derivative(|a, b| (a - b).abs(), &g, 1e-4, cfg)?;
            let cf = lemma2_rhs(c(alpha, 0.0), rho)?;
            out.push(Lemma2Case {
                alpha,
                rho,
                finite_difference: fd,
                closed_form: cf,
                residual: (fd - cf).norm(),
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaCase {
    pub y: f64,
    pub residual: f64,
}

/// 50 log-spaced points on `[0.05, 20]`.
pub fn theta_cases() -> Result<Vec<ThetaCase>> {
    (0..50)
        .map(|k| {
            let y = 0.05 * 400f64.powf(k as f64 / 49.0);
            Ok(ThetaCase {
                y,
                residual: psi_functional_residual(y)?,
            })
        })
        .collect()
}

/// The 9 × 13 grid `Re s ∈ {0.1, …, 0.9}`, `Im s ∈ {0, 2.5, …, 30}`.
pub fn strip_grid() -> Vec<Complex64> {
    let mut out = Vec::with_capacity(117);
    for i in 0..9 {
        for j in 0..13 {
            out.push(c(0.1 + 0.1 * i as f64, 2.5 * j as f64));
        }
    }
    out
}

struct Outcome {
    passed: bool,
    metric: f64,
    threshold: f64,
    detail: String,
}

fn criterion_1(o: &VerifyOptions) -> Result<Outcome> {
    let cases = price_cases(&o.cfg)?;
    let mut m = 0.0;
    for k in &cases {
        worst(&mut m, k.check.residual);
    }
    Ok(Outcome {
        passed: m < 1e-5,
        metric: m,
        threshold: 1e-5,
        detail: format!("{} cases", cases.len()),
    })
}

fn criterion_2(o: &VerifyOptions) -> Result<Outcome> {
    let cases = lemma2_cases(&o.cfg)?;
    let mut m = 0.0;
    let mut all_negative = true;
    for k in &cases {
        worst(&mut m, k.residual);
        all_negative &= k.finite_difference.re < 0.0;
    }
    Ok(Outcome {
        passed: m < 1e-5 && all_negative,
        metric: m,
        threshold: 1e-5,
        detail: format!("{} cases, derivative negative everywhere: {all_negative}", cases.len()),
    })
}

fn criterion_3(_: &VerifyOptions) -> Result<Outcome> {
    let mut m = 0.0;
    for k in theta_cases()? {
        worst(&mut m, k.residual);
    }
    Ok(Outcome {
        passed: m < 1e-12,
        metric: m,
        threshold: 1e-12,
        detail: "50 points on [0.05, 20]".into(),
    })
}

fn criterion_4(o: &VerifyOptions) -> Result<Outcome> {
    let mut m = 0.0;
    for s in strip_grid() {
        worst(&mut m, (phi_oracle(s, &o.cfg)? - phi_product(s)?).norm());
    }
    Ok(Outcome {
        passed: m < 1e-9,
        metric: m,
        threshold: 1e-9,
        detail: "117 strip points".into(),
    })
}

fn criterion_5(o: &VerifyOptions) -> Result<Outcome> {
    let mut m = 0.0;
    for s in strip_grid() {
        worst(&mut m, (interpolate_phi(s, &o.cfg)? - phi_oracle(s, &o.cfg)?).norm());
    }
    Ok(Outcome {
        passed: m < 1e-9,
        metric: m,
        threshold: 1e-9,
        detail: "117 strip points".into(),
    })
}

fn criterion_6(_: &VerifyOptions) -> Result<Outcome> {
    let zeros = scan_zeros(10.0, 30.0, 0.05, 1e-10)?;
    if zeros.len() != 3 {
        return Ok(Outcome {
            passed: false,
            metric: f64::INFINITY,
            threshold: 1e-6,
            detail: format!("found {} zeros: {zeros:?}", zeros.len()),
        });
    }
    let mut m = 0.0;
    for (z, r) in zeros.iter().zip(ZETA_ZEROS) {
        worst(&mut m, (z - r).abs());
    }
    Ok(Outcome {
        passed: m < 1e-6,
        metric: m,
        threshold: 1e-6,
        detail: format!("{:.9} {:.9} {:.9}", zeros[0], zeros[1], zeros[2]),
    })
}

fn criterion_7(_: &VerifyOptions) -> Result<Outcome> {
    let n_list = [100, 200, 400, 800, 1600];
    let mut m = 0.0;
    let mut parts = Vec::new();
    for &re in &[0.3, 0.5, 0.7] {
        let e = divergence_exponent(c(re, 3.0), &n_list)?;
        worst(&mut m, (e - (1.0 - re)).abs());
        parts.push(format!("{re}:{e:.4}"));
    }
    Ok(Outcome {
        passed: m < 0.05,
        metric: m,
        threshold: 0.05,
        detail: format!("Im s = 3, exponents {}", parts.join(" ")),
    })
}

fn criterion_8(_: &VerifyOptions) -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut m: f64 = 0.0;
    for p in 1..=60u64 {
        let chars = enumerate_characters(p)?;
        if chars.len() as u64 != totient(p) {
            failures.push(format!("count P={p}"));
        }
        for chi in &chars {
            let neg = chi.value(-1);
            let parity_ok = match chi.parity {
                Parity::Even => neg == c(1.0, 0.0),
                Parity::Odd => neg == c(-1.0, 0.0),
            };
            if !parity_ok {
                failures.push(format!("parity P={p} label={}", chi.label));
            }
            for a in 0..p as i64 {
                if chi.value(a) != chi.value(a + p as i64) || chi.value(a) != chi.value(a - p as i64) {
                    failures.push(format!("period P={p}"));
                }
                for b in 0..p as i64 {
                    let prod = match (chi.index(a), chi.index(b)) {
                        (Some(x), Some(y)) => Some((x + y) % chi.order_bound),
                        _ => None,
                    };
                    if prod != chi.index(a * b) {
                        failures.push(format!("multiplicativity P={p} label={} ({a},{b})", chi.label));
                    }
                }
            }
            if p <= 40 && chi.primitive {
                m = m.max((gauss_sum(chi).norm() - (p as f64).sqrt()).abs());
            }
        }
    }
    failures.truncate(5);
    Ok(Outcome {
        passed: failures.is_empty() && m < 1e-10,
        metric: m,
        threshold: 1e-10,
        detail: if failures.is_empty() {
            "P <= 60 exhaustive; metric is the worst | |G| - sqrt(P) |".into()
        } else {
            failures.join("; ")
        },
    })
}

fn criterion_9(o: &VerifyOptions) -> Result<Outcome> {
    let points = [c(1.1, 0.0), c(1.3, 2.0), c(1.5, -5.0), c(1.8, 9.0), c(2.0, 14.0)];
    let mut m = 0.0;
    let mut count = 0;
    for p in 1..=12u64 {
        for chi in primitive_characters(p)? {
            for &s in &points {
                let v = integral_definition(s, &chi, &o.cfg)?.value;
                worst(&mut m, (v - phi_reference(s, &chi)?).norm());
                count += 1;
            }
        }
    }
    Ok(Outcome {
        passed: m < 1e-9,
        metric: m,
        threshold: 1e-9,
        detail: format!("{count} evaluations"),
    })
}

fn criterion_10(o: &VerifyOptions) -> Result<Outcome> {
    let points = [c(0.2, 1.0), c(0.5, 6.0), c(0.7, -3.0), c(0.4, 12.0), c(0.9, 0.5)];
    let halved = o.cfg.halved();
    let mut m = 0.0;
    let mut largest = 0.0;
    for p in [3u64, 4, 5] {
        for chi in primitive_characters(p)? {
            for &s in &points {
                let a = phi_paper(s, &chi, &o.cfg)?.residual_vs_reference.unwrap_or(f64::INFINITY);
                let b = phi_paper(s, &chi, &halved)?.residual_vs_reference.unwrap_or(f64::INFINITY);
                worst(&mut m, (a - b).abs());
                worst(&mut largest, a);
            }
        }
    }
    Ok(Outcome {
        passed: m < 1e-9,
        metric: m,
        threshold: 1e-9,
        detail: format!("largest residual vs reference {largest:.2e}"),
    })
}

fn criterion_11(o: &VerifyOptions) -> Result<Outcome> {
    let chi = enumerate_characters(4)?
        .into_iter()
        .find(|x| x.parity == Parity::Odd)
        .ok_or_else(|| Error::domain("no odd character mod 4"))?;
    let zeros = scan_l_zeros(&chi, 1.0, 8.0, 0.1, 1e-10, ScanFormula::Reference, &o.cfg)?;
    let first = zeros.first().copied().unwrap_or(f64::NAN);
    let m = (first - CHI4_FIRST_ZERO).abs();
    Ok(Outcome {
        passed: m < 1e-4,
        metric: if m.is_nan() { f64::INFINITY } else { m },
        threshold: 1e-4,
        detail: format!("first ordinate {first:.9}"),
    })
}

fn criterion_12(_: &VerifyOptions) -> Result<Outcome> {
    let g = exact_grid_check(100, Branch::Riemann)?;
    let n = g.exceptional.len();
    Ok(Outcome {
        passed: g.iff_violations.is_empty() && n >= 5,
        metric: g.iff_violations.len() as f64,
        threshold: 0.0,
        detail: match g.exceptional.first() {
            Some((s, w)) => format!("{} points, {n} exceptional-circle points, e.g. ({s}, {w})", g.points),
            None => format!("{} points, no exceptional-circle points", g.points),
        },
    })
}

fn criterion_13(_: &VerifyOptions) -> Result<Outcome> {
    let mut sym = 0.0;
    for &w in &[1.0, 14.134725, 30.0] {
        let p = CenteredPoint::new(0.0, w)?;
        for n in [1u64, 4, 8] {
            for t in [0.0, 1.0, 5.0, 10.0] {
                let a = zn_t(&p, Branch::Riemann, false, n, t)?.norm();
                let b = zn_t(&p, Branch::Riemann, true, n, t)?.norm();
                worst(&mut sym, (a - b).abs() / a.max(f64::MIN_POSITIVE));
            }
        }
    }
    let p = CenteredPoint::new(0.25, 2.0)?;
    let ts: Vec<f64> = (0..=600).map(|i| i as f64 * 0.05).collect();
    let fit = envelope_rate(&p, Branch::Riemann, &ts)?;
    let rel = (fit.rate - fit.expected).abs() / fit.expected.abs();
    Ok(Outcome {
        passed: sym < 1e-9 && rel < 0.05,
        metric: sym,
        threshold: 1e-9,
        detail: format!(
            "envelope rate {:.6} vs {:.6} (relative {rel:.1e}, limit 5%)",
            fit.rate, fit.expected
        ),
    })
}

fn criterion_14(o: &VerifyOptions) -> Result<Outcome> {
    let p = CenteredPoint::new(0.0, 14.134725)?;
    let mut margin = f64::INFINITY;
    let mut stream = 0;
    for &t in &[2.0, 4.0, 6.0] {
        for &eps in &[0.05, 0.1] {
            let r = concentration_check(t, eps, 1, &p, Branch::Riemann, o.samples, RngSeed::new(o.seed, stream))?;
            margin = margin.min(r.empirical_probability - r.bound);
            stream += 1;
        }
    }
    Ok(Outcome {
        passed: margin >= 0.0,
        metric: margin,
        threshold: 0.0,
        detail: format!("smallest empirical - bound over 6 points, {} samples each", o.samples),
    })
}

fn criterion_15(_: &VerifyOptions) -> Result<Outcome> {
    let mut m = 0.0;
    for p in 1..=12u64 {
        for chi in enumerate_characters(p)? {
            for k in [1u32, 2] {
                for n in [10u64, 100, 10_000] {
                    let (a, b) = conjugate_sums(&chi, k, n);
                    worst(&mut m, (a.norm() - b.norm()).abs() / a.norm().max(1.0));
                }
            }
        }
    }
    Ok(Outcome {
        passed: m <= 4.0 * f64::EPSILON,
        metric: m,
        threshold: 4.0 * f64::EPSILON,
        detail: "relative modulus gap".into(),
    })
}

pub fn run_criterion(id: u32, opts: &VerifyOptions) -> Result<CriterionReport> {
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, n)| n.to_string())
        .ok_or_else(|| Error::domain(format!("unknown criterion {id}")))?;
    let start = Instant::now();
    let outcome = match id {
        1 => criterion_1(opts),
        2 => criterion_2(opts),
        3 => criterion_3(opts),
        4 => criterion_4(opts),
        5 => criterion_5(opts),
        6 => criterion_6(opts),
        7 => criterion_7(opts),
        8 => criterion_8(opts),
        9 => criterion_9(opts),
        10 => criterion_10(opts),
        11 => criterion_11(opts),
        12 => criterion_12(opts),
        13 => criterion_13(opts),
        14 => criterion_14(opts),
        _ => criterion_15(opts),
    };
    let seconds = start.elapsed().as_secs_f64();
    Ok(match outcome {
        Ok(o) => CriterionReport {
            id,
            name,
            passed: o.passed,
            metric: o.metric,
            threshold: o.threshold,
            detail: o.detail,
            seconds,
        },
        Err(e) => CriterionReport {
            id,
            name,
            passed: false,
            metric: f64::INFINITY,
            threshold: f64::NAN,
            detail: format!("error: {e}"),
            seconds,
        },
    })
}

pub fn run_all(opts: &VerifyOptions) -> Result<Vec<CriterionReport>> {
    CRITERIA.iter().map(|(id, _)| run_criterion(*id, opts)).collect()
}
