//! Time-parameterized generator trajectories.
//!
//! The correlation follows `ρ(t) = 1 − e^{−t}` and the generator means
//! `α_n(t)`, `β_n(t)` decay along logarithmic spirals. Finite-`N`
//! generators reduce to one-dimensional integrals
//! `J(m) = ∫ |x| e^{−k(x−m)²} dx`, `k = e^t/4`, which have the closed form
//! `J(m) = √π z/k + (e^{−z²}/k)(1 − √π z erfcx(z))`, `z = m√k`, `Re z ≥ 0`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{erf_real, erfcx, integrate_pieces, sample_normal, Integral, QuadratureConfig, RngSeed};
use crate::zeta::{slope, StripPoint};

/// Largest supported time.
pub const T_MAX: f64 = 40.0;

/// Half-width in `t` of the excluded neighbourhood of a cosine zero.
pub const ZERO_EXCLUSION: f64 = 0.1;

/// Envelope rates below this are classified as bounded.
pub const BOUNDED_THRESHOLD: f64 = 1e-6;

/// Centered coordinates `s = (1/2 − σ) + jω`.
pub type CenteredPoint = StripPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Offsets `1/2 ∓ σ`.
    #[default]
    Riemann,
    /// Offsets `3/2 ∓ σ`.
    DirichletOdd,
}

impl Branch {
    pub fn offset(self) -> f64 {
        match self {
            Branch::Riemann => 0.5,
            Branch::DirichletOdd => 1.5,
        }
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(t >= 0.0 && t <= T_MAX) {
        return Err(Error::domain(format!("t must lie in [0, {T_MAX}]")));
    }
    Ok(())
}

/// `ρ(t) = 1 − e^{−t}`.
pub fn rho_of_t(t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(-(-t).exp_m1())
}

/// `1 − ρ(t) = e^{−t}`, exact where `ρ` itself rounds to 1.
pub fn rho_complement(t: f64) -> Result<f64> {
    check_t(t)?;
    Ok((-t).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DynParams {
    pub gamma_alpha: f64,
    pub omega_alpha: f64,
    pub gamma_beta: f64,
    pub omega_beta: f64,
}

pub fn dyn_params(p: &CenteredPoint, branch: Branch) -> DynParams {
    let c = branch.offset();
    let a = c - p.sigma;
    let b = c + p.sigma;
    let w2 = p.omega * p.omega;
    DynParams {
        gamma_alpha: a / (a * a + w2),
        omega_alpha: p.omega / (a * a + w2),
        gamma_beta: b / (b * b + w2),
        omega_beta: p.omega / (b * b + w2),
    }
}

fn spiral(n: u64, gamma: f64, phase: f64, t: f64) -> Complex64 {
    let amp = 2.0 * PI.sqrt() * n as f64 * (-(1.0 + gamma) * t / 2.0).exp();
    Complex64::from_polar(amp, phase * t / 2.0)
}

/// `α_n(t) = 2√π n e^{−(1+γ_α)t/2} e^{jω_α t/2}`.
pub fn alpha_n_t(n: u64, p: &CenteredPoint, branch: Branch, t: f64) -> Result<Complex64> {
    check_n(n)?;
    check_t(t)?;
    let q = dyn_params(p, branch);
    Ok(spiral(n, q.gamma_alpha, q.omega_alpha, t))
}

/// `β_n(t) = 2√π n e^{−(1+γ_β)t/2} e^{−jω_β t/2}`, the conjugate of `α_n(t)` at `σ = 0`.
pub fn beta_n_t(n: u64, p: &CenteredPoint, branch: Branch, t: f64) -> Result<Complex64> {
    check_n(n)?;
    check_t(t)?;
    let q = dyn_params(p, branch);
    Ok(spiral(n, q.gamma_beta, -q.omega_beta, t))
}

fn check_n(n: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::domain("n must be at least 1"));
    }
    Ok(())
}

fn mean(n: u64, p: &CenteredPoint, branch: Branch, mirror: bool, t: f64) -> Result<Complex64> {
    if mirror {
        beta_n_t(n, p, branch, t)
    } else {
        alpha_n_t(n, p, branch, t)
    }
}

/// `J(m) = ∫ |x| e^{−k(x−m)²} dx` in closed form.
pub fn j_closed_form(m: Complex64, k: f64) -> Result<Complex64> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::domain("k must be positive and finite"));
    }
    let mut z = m * k.sqrt();
    if z.re < 0.0 {
        z = -z;
    }
    let e = (-z * z).exp();
    Ok(PI.sqrt() * z / k + e / k * (1.0 - PI.sqrt() * z * erfcx(z)))
}

/// `J(m)` by quadrature along the real axis, after `x = Re m + u/√k`.
///
/// The integrand reaches `e^{k (Im m)²}` in modulus, so relative accuracy is
/// lost once that magnification is large.
pub fn j_quadrature(m: Complex64, k: f64, cfg: &QuadratureConfig) -> Result<Integral> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::domain("k must be positive and finite"));
    }
    let sk = k.sqrt();
    let beta = m.im * sk;
    let half = (2.0 * cfg.tail_cutoff + beta * beta).sqrt();
    let kink = -m.re * sk;
    let mut pts = vec![-half, 0.0, half];
    if kink.abs() < half && kink != 0.0 {
        pts.push(kink);
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let shift = Complex64::new(0.0, beta);
    let r = integrate_pieces(
        |u| {
            let x = m.re + u / sk;
            let w = Complex64::new(u, 0.0) - shift;
            x.abs() * (-w * w).exp()
        },
        &pts,
        cfg,
    )?;
    Ok(r.scale(Complex64::new(1.0 / sk, 0.0)))
}

/// Evaluation route for the single-shift integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InMethod {
    #[default]
    Closed,
    /// Real-axis quadrature of the shifted Gaussian.
    Direct,
    /// Real-axis quadrature with the imaginary shift factored into a phase.
    Factored,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InValue {
    pub value: Complex64,
    pub error: f64,
    pub method: InMethod,
    /// `e^{k (Im α)²}`, the modulus gain of the real-axis integrand.
    pub magnification: f64,
}

/// `I_n(t) = e^{t/2} ∫ |Δx| exp(−e^t (Δx ± α_n(t))²/4) dΔx`, `sign = ±1`.
pub fn in_t(
    n: u64,
    p: &CenteredPoint,
    branch: Branch,
    t: f64,
    sign: i8,
    method: InMethod,
    cfg: &QuadratureConfig,
) -> Result<InValue> {
    if sign != 1 && sign != -1 {
        return Err(Error::domain("sign must be +1 or -1"));
    }
    let alpha = alpha_n_t(n, p, branch, t)?;
    let k = t.exp() / 4.0;
    let scale = (t / 2.0).exp();
    let shift = -(sign as f64) * alpha;
    let magnification = (k * alpha.im * alpha.im).exp();
    let (value, error) = match method {
        InMethod::Closed => (j_closed_form(shift, k)?, 0.0),
        InMethod::Direct => {
            let r = j_quadrature(shift, k, cfg)?;
            (r.value, r.error)
        }
        InMethod::Factored => {
            let a = alpha.re;
            let b = alpha.im;
            let s = sign as f64;
            let front = (-k * (alpha * alpha - a * a)).exp();
            let sk = k.sqrt();
            let half = (2.0 * cfg.tail_cutoff).sqrt();
            let kink = s * a * sk;
            let mut pts = vec![-half, 0.0, half];
            if kink.abs() < half && kink != 0.0 {
                pts.push(kink);
            }
            pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
            // Δx = −s a + u/√k
            let r = integrate_pieces(
                |u| {
                    let dx = -s * a + u / sk;
                    let phase = -s * 0.5 * t.exp() * dx * b;
                    Complex64::from_polar(dx.abs() * (-u * u).exp(), phase)
                },
                &pts,
                cfg,
            )?;
            (front * r.value / sk, front.norm() * r.error / sk)
        }
    };
    Ok(InValue {
        value: scale * value,
        error: scale * error,
        method,
        magnification,
    })
}

/// Finite-`N` generator trajectory
/// `(e^{t/2}/√π) [J(0) + 2 Σ_{n≤N} c_n J(μ_n(t))]`, `μ = α` (forward) or `β` (mirror).
///
/// `coefficients[n−1] = c_n`; the Riemann generator has `c_n = 1`.
pub fn zn_t_with(
    p: &CenteredPoint,
    branch: Branch,
    mirror: bool,
    coefficients: &[Complex64],
    t: f64,
) -> Result<Complex64> {
    if coefficients.is_empty() {
        return Err(Error::domain("N must be at least 1"));
    }
    check_t(t)?;
    let k = t.exp() / 4.0;
    let mut sum = j_closed_form(Complex64::new(0.0, 0.0), k)?;
    for (i, c) in coefficients.iter().enumerate() {
        let m = mean(i as u64 + 1, p, branch, mirror, t)?;
        sum += 2.0 * c * j_closed_form(m, k)?;
    }
    Ok((t / 2.0).exp() / PI.sqrt() * sum)
}

/// [`zn_t_with`] with unit coefficients.
pub fn zn_t(p: &CenteredPoint, branch: Branch, mirror: bool, n: u64, t: f64) -> Result<Complex64> {
    check_n(n)?;
    zn_t_with(p, branch, mirror, &vec![Complex64::new(1.0, 0.0); n as usize], t)
}

/// [`zn_t`] with every `J` computed by real-axis quadrature.
pub fn zn_t_quadrature(
    p: &CenteredPoint,
    branch: Branch,
    mirror: bool,
    n: u64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<Integral> {
    check_n(n)?;
    check_t(t)?;
    let k = t.exp() / 4.0;
    let mut acc = j_quadrature(Complex64::new(0.0, 0.0), k, cfg)?;
    for i in 1..=n {
        let m = mean(i, p, branch, mirror, t)?;
        acc = acc.join(j_quadrature(m, k, cfg)?.scale(Complex64::new(2.0, 0.0)));
    }
    Ok(acc.scale(Complex64::new((t / 2.0).exp() / PI.sqrt(), 0.0)))
}

/// `e^{2(γ_β−γ_α)t} |cos(ω_α t/2)| / |cos(ω_β t/2)|`.
pub fn model_ratio(q: &DynParams, t: f64) -> f64 {
    (2.0 * (q.gamma_beta - q.gamma_alpha) * t).exp() * (q.omega_alpha * t / 2.0).cos().abs()
        / (q.omega_beta * t / 2.0).cos().abs()
}

/// `Σ_n |Re α_n(t)| / Σ_n |Re β_n(t)|`, which equals
/// `e^{(γ_β−γ_α)t/2} |cos(ω_α t/2)| / |cos(ω_β t/2)|` for every `N`.
pub fn mean_ratio(p: &CenteredPoint, branch: Branch, n: u64, t: f64) -> Result<f64> {
    check_n(n)?;
    let mut a = 0.0;
    let mut b = 0.0;
    for i in 1..=n {
        a += alpha_n_t(i, p, branch, t)?.re.abs();
        b += beta_n_t(i, p, branch, t)?.re.abs();
    }
    Ok(a / b)
}

fn near_cosine_zero(omega: f64, t: f64) -> bool {
    if omega == 0.0 {
        return false;
    }
    // zeros of cos(ωt/2) at t = (2k+1)π/|ω|
    let period = 2.0 * PI / omega.abs();
    let first = PI / omega.abs();
    let k = ((t - first) / period).round();
    (t - (first + k * period)).abs() < ZERO_EXCLUSION
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub t: f64,
    pub rho: f64,
    pub rho_complement: f64,
    pub zn_forward: Complex64,
    pub zn_mirror: Complex64,
    pub ratio: f64,
    pub model_ratio: f64,
    pub mean_ratio: f64,
    /// Within the exclusion band of a cosine zero, or a vanishing mirror.
    pub flagged: bool,
}

pub fn ratio_trajectory(p: &CenteredPoint, branch: Branch, n: u64, t_grid: &[f64]) -> Result<Vec<TrajectorySample>> {
    check_n(n)?;
    if t_grid.is_empty() || t_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("t grid must be non-empty and strictly increasing"));
    }
    let q = dyn_params(p, branch);
    t_grid
        .iter()
        .map(|&t| {
            let zf = zn_t(p, branch, false, n, t)?;
            let zm = zn_t(p, branch, true, n, t)?;
            let tiny = zm.norm() < 1e-300;
            let flagged = tiny || near_cosine_zero(q.omega_alpha, t) || near_cosine_zero(q.omega_beta, t);
            Ok(TrajectorySample {
                t,
                rho: rho_of_t(t)?,
                rho_complement: rho_complement(t)?,
                zn_forward: zf,
                zn_mirror: zm,
                ratio: if tiny { f64::INFINITY } else { zf.norm() / zm.norm() },
                model_ratio: model_ratio(&q, t),
                mean_ratio: mean_ratio(p, branch, n, t)?,
                flagged,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeFit {
    /// Slope of `log model_ratio` with the cosine factors divided out.
    pub rate: f64,
    /// Slope of `log model_ratio` itself.
    pub raw_rate: f64,
    /// `2(γ_β − γ_α)`.
    pub expected: f64,
    pub samples_used: usize,
}

/// Exponential envelope rate of the model ratio over non-flagged samples of `t_grid`.
pub fn envelope_rate(p: &CenteredPoint, branch: Branch, t_grid: &[f64]) -> Result<EnvelopeFit> {
    let q = dyn_params(p, branch);
    let mut ts = Vec::new();
    let mut demod = Vec::new();
    let mut raw = Vec::new();
    for &t in t_grid {
        check_t(t)?;
        if near_cosine_zero(q.omega_alpha, t) || near_cosine_zero(q.omega_beta, t) {
            continue;
        }
        let ca = (q.omega_alpha * t / 2.0).cos().abs();
        let cb = (q.omega_beta * t / 2.0).cos().abs();
        let lr = model_ratio(&q, t).ln();
        ts.push(t);
        raw.push(lr);
        demod.push(lr - ca.ln() + cb.ln());
    }
    Ok(EnvelopeFit {
        rate: slope(&ts, &demod)?,
        raw_rate: slope(&ts, &raw)?,
        expected: 2.0 * (q.gamma_beta - q.gamma_alpha),
        samples_used: ts.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationReport {
    pub t: f64,
    pub epsilon: f64,
    pub n: u64,
    pub empirical_probability: f64,
    /// `1 − 2 exp(−ε² e^t / 2)`.
    pub bound: f64,
    /// `erf(ε e^{t/2} / 2)` for `Δx ~ N(Re α_n(t), 2e^{−t})`.
    pub exact_probability: f64,
    pub samples: usize,
    pub seed: RngSeed,
    pub satisfied: bool,
}

/// Monte Carlo estimate of `P(|Δx − Re α_n(t)| < ε)` for `Δx ~ N(Re α_n(t), 2e^{−t})`.
pub fn concentration_check(
    t: f64,
    epsilon: f64,
    n: u64,
    p: &CenteredPoint,
    branch: Branch,
    samples: usize,
    seed: RngSeed,
) -> Result<ConcentrationReport> {
    if samples < 1000 {
        return Err(Error::domain("at least 1000 samples are required"));
    }
    if !(epsilon > 0.0) {
        return Err(Error::domain("epsilon must be positive"));
    }
    let mu = alpha_n_t(n, p, branch, t)?.re;
    let var = 2.0 * rho_complement(t)?;
    let draws = sample_normal(mu, var, seed, samples)?;
    let hits = draws.iter().filter(|x| (*x - mu).abs() < epsilon).count();
    let empirical = hits as f64 / samples as f64;
    let bound = 1.0 - 2.0 * (-epsilon * epsilon * t.exp() / 2.0).exp();
    Ok(ConcentrationReport {
        t,
        epsilon,
        n,
        empirical_probability: empirical,
        bound,
        exact_probability: erf_real(epsilon * (t / 2.0).exp() / 2.0),
        samples,
        seed,
        satisfied: empirical >= bound,
    })
}

pub type Rational = Ratio<i128>;

/// Parameter equalities decided in exact arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactConditions {
    pub gamma_equal: bool,
    pub omega_equal: bool,
    pub joint: bool,
    /// `γ_α = γ_β` with `ω_α ≠ ω_β`.
    pub exceptional: bool,
}

fn branch_offset_exact(branch: Branch) -> Rational {
    match branch {
        Branch::Riemann => Rational::new(1, 2),
        Branch::DirichletOdd => Rational::new(3, 2),
    }
}

pub fn exact_conditions(sigma: Rational, omega: Rational, branch: Branch) -> ExactConditions {
    let c = branch_offset_exact(branch);
    let a = c - sigma;
    let b = c + sigma;
    let w2 = omega * omega;
    let da = a * a + w2;
    let db = b * b + w2;
    let gamma_equal = a * db == b * da;
    let omega_equal = omega * db == omega * da;
    ExactConditions {
        gamma_equal,
        omega_equal,
        joint: gamma_equal && omega_equal,
        exceptional: gamma_equal && !omega_equal,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridAlgebra {
    pub points: usize,
    /// Points where the joint condition and `σ = 0` disagree.
    pub iff_violations: Vec<(f64, f64)>,
    pub exceptional: Vec<(f64, f64)>,
}

/// Exact check of `(γ_α = γ_β ∧ ω_α = ω_β) ⟺ σ = 0` on
/// `σ = k/d, |k| < d/2` by `ω = k/d, 1 ≤ |k| ≤ d/2`.
pub fn exact_grid_check(denominator: i64, branch: Branch) -> Result<GridAlgebra> {
    if denominator < 2 {
        return Err(Error::domain("denominator must be at least 2"));
    }
    let d = denominator as i128;
    let half = d / 2;
    let sigma_max = if d % 2 == 0 { half - 1 } else { half };
    let mut out = GridAlgebra {
        points: 0,
        iff_violations: Vec::new(),
        exceptional: Vec::new(),
    };
    for ks in -sigma_max..=sigma_max {
        for kw in (-half..=half).filter(|&k| k != 0) {
            let sigma = Rational::new(ks, d);
            let omega = Rational::new(kw, d);
            let c = exact_conditions(sigma, omega, branch);
            let at = (ks as f64 / d as f64, kw as f64 / d as f64);
            out.points += 1;
            if c.joint != (ks == 0) {
                out.iff_violations.push(at);
            }
            if c.exceptional {
                out.exceptional.push(at);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundednessRecord {
    pub sigma: f64,
    pub omega: f64,
    pub rate: f64,
    pub raw_rate: f64,
    pub bounded: bool,
    /// Joint parameter condition in floating point.
    pub joint_condition: bool,
    pub gamma_equal: bool,
    pub omega_equal: bool,
    pub exceptional: bool,
    /// `|z_N forward| / |z_N mirror|` at `t_max`.
    pub ratio_at_t_max: f64,
}

/// Envelope-rate classification of each point, alongside the parameter equalities.
pub fn boundedness_report(
    grid: &[CenteredPoint],
    branch: Branch,
    n: u64,
    t_max: f64,
) -> Result<Vec<BoundednessRecord>> {
    check_t(t_max)?;
    if !(t_max > 1.0) {
        return Err(Error::domain("t_max must exceed 1"));
    }
    let steps = (t_max / 0.05).ceil() as usize;
    let t_grid: Vec<f64> = (0..=steps).map(|i| t_max * i as f64 / steps as f64).collect();
    grid.iter()
        .map(|p| {
            let fit = envelope_rate(p, branch, &t_grid)?;
            let q = dyn_params(p, branch);
            let gamma_equal = (q.gamma_alpha - q.gamma_beta).abs() <= 1e-14 * q.gamma_alpha.abs().max(1.0);
            let omega_equal = (q.omega_alpha - q.omega_beta).abs() <= 1e-14 * q.omega_alpha.abs().max(1.0);
            let zf = zn_t(p, branch, false, n, t_max)?;
            let zm = zn_t(p, branch, true, n, t_max)?;
            Ok(BoundednessRecord {
                sigma: p.sigma,
                omega: p.omega,
                rate: fit.rate,
                raw_rate: fit.raw_rate,
                bounded: fit.rate.abs() < BOUNDED_THRESHOLD,
                joint_condition: gamma_equal && omega_equal,
                gamma_equal,
                omega_equal,
                exceptional: gamma_equal && !omega_equal,
                ratio_at_t_max: zf.norm() / zm.norm(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_zero_detection() {
        let w = 2.0;
        assert!(near_cosine_zero(w, PI / 2.0 + 0.05));
        assert!(near_cosine_zero(w, 3.0 * PI / 2.0));
        assert!(!near_cosine_zero(w, PI));
        assert!(!near_cosine_zero(0.0, 1.0));
    }

    #[test]
    fn closed_form_at_zero_mean() {
        let k = 3.0;
        assert!((j_closed_form(Complex64::new(0.0, 0.0), k).unwrap().re - 1.0 / k).abs() < 1e-15);
    }
}
