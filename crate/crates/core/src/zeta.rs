//! The completed zeta function `φ(s) = π^{−s/2} Γ(s/2) ζ(s)` and the
//! generator functions that reproduce it on the critical strip.
//!
//! `phi_oracle` uses Riemann's globally convergent theta integral; the
//! generator `z(s)` uses the analytic continuation of `∫₀¹ y^{s/2−1} Ψ(y) dy`
//! through the theta functional identity, since the integral itself diverges
//! for `Re s ≤ 1`. The finite-`N` generator is kept as its own function so
//! that divergence can be measured.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{
    complex_gamma, integrate_pieces, lower_incomplete_gamma, real_pow, zeta_oracle,
    QuadratureConfig,
};
use crate::theta::psi;

/// A point `s = (1/2 − σ) + jω` of the critical strip.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StripPoint {
    pub sigma: f64,
    pub omega: f64,
}

impl StripPoint {
    pub fn new(sigma: f64, omega: f64) -> Result<Self> {
        if !(sigma.abs() < 0.5) || !omega.is_finite() {
            return Err(Error::domain("strip points need |sigma| < 1/2 and finite omega"));
        }
        Ok(StripPoint { sigma, omega })
    }

    pub fn from_s(s: Complex64) -> Result<Self> {
        Self::new(0.5 - s.re, s.im)
    }

    pub fn s(&self) -> Complex64 {
        Complex64::new(0.5 - self.sigma, self.omega)
    }

    /// `1 − s = (1/2 + σ) − jω`.
    pub fn mirror(&self) -> StripPoint {
        StripPoint {
            sigma: -self.sigma,
            omega: -self.omega,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorValue {
    pub value: Complex64,
    pub quadrature_error: f64,
    /// True when the value rests on the analytic continuation rather than a convergent integral.
    pub regularized: bool,
}

fn theta_weight(y: f64) -> f64 {
    psi(y, 1e-18).map(|t| t.value.re).unwrap_or(0.0)
}

/// `∫₁^∞ y^{a−1} Ψ(y) dy` for any complex `a`.
fn theta_mellin_tail(a: Complex64, cfg: &QuadratureConfig) -> Result<(Complex64, f64)> {
    let r = integrate_pieces(
        |y| real_pow(y, a - 1.0) * theta_weight(y),
        &[1.0, 2.0, 4.0, 8.0, f64::INFINITY],
        cfg,
    )?;
    Ok((r.value, r.error))
}

fn is_pole(s: Complex64) -> bool {
    s == Complex64::new(0.0, 0.0) || s == Complex64::new(1.0, 0.0)
}

/// `J(s) = ∫₁^∞ (y^{s/2−1} + y^{(1−s)/2−1}) Ψ(y) dy`, entire in `s`.
fn riemann_integral(s: Complex64, cfg: &QuadratureConfig) -> Result<(Complex64, f64)> {
    let r = integrate_pieces(
        |y| (real_pow(y, s / 2.0 - 1.0) + real_pow(y, (1.0 - s) / 2.0 - 1.0)) * theta_weight(y),
        &[1.0, 2.0, 4.0, 8.0, f64::INFINITY],
        cfg,
    )?;
    Ok((r.value, r.error))
}

/// `φ(s) = −1/s − 1/(1−s) + ∫₁^∞ (y^{s/2−1} + y^{(1−s)/2−1}) Ψ(y) dy`.
pub fn phi_oracle(s: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    phi_oracle_with_error(s, cfg).map(|(v, _)| v)
}

/// [`phi_oracle`] together with the quadrature error estimate.
pub fn phi_oracle_with_error(s: Complex64, cfg: &QuadratureConfig) -> Result<(Complex64, f64)> {
    if is_pole(s) {
        return Err(Error::Pole { at: s });
    }
    let (j, err) = riemann_integral(s, cfg)?;
    Ok((j - 1.0 / s - 1.0 / (1.0 - s), err))
}

/// `π^{−s/2} Γ(s/2) ζ(s)` from the independent Γ and ζ routines.
pub fn phi_product(s: Complex64) -> Result<Complex64> {
    let g = complex_gamma(s / 2.0)?;
    let z = zeta_oracle(s)?;
    Ok(real_pow(PI, -s / 2.0) * g * z)
}

/// `ξ(s) = s(s−1) φ(s)`, with the poles cancelled algebraically:
/// `s(s−1)(−1/s − 1/(1−s)) = 1`.
pub fn xi(s: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let (j, _) = riemann_integral(s, cfg)?;
    Ok(s * (s - 1.0) * j + 1.0)
}

fn regularized(s: Complex64, cfg: &QuadratureConfig) -> Result<GeneratorValue> {
    if is_pole(s) {
        return Err(Error::Pole { at: s });
    }
    let (tail, err) = theta_mellin_tail((1.0 - s) / 2.0, cfg)?;
    Ok(GeneratorValue {
        value: tail + 1.0 / (s - 1.0) - 1.0 / s,
        quadrature_error: err,
        regularized: true,
    })
}

fn check_strip(s: Complex64) -> Result<()> {
    if !(s.re > 0.0 && s.re < 1.0) {
        return Err(Error::domain("s must lie in the critical strip 0 < Re(s) < 1"));
    }
    Ok(())
}

/// `I_reg(s) = ∫₁^∞ u^{(1−s)/2−1} Ψ(u) du + 1/(s−1) − 1/s` on the critical strip.
///
/// For `Re s > 1` this equals `∫₀¹ y^{s/2−1} Ψ(y) dy`; on the strip it is the
/// analytic continuation of that integral.
pub fn strip_integral_regularized(s: Complex64, cfg: &QuadratureConfig) -> Result<GeneratorValue> {
    check_strip(s)?;
    regularized(s, cfg)
}

/// The same expression on all of `C \ {0, 1}`, for overlap checks off the strip.
pub fn strip_integral_continued(s: Complex64, cfg: &QuadratureConfig) -> Result<GeneratorValue> {
    let mut v = regularized(s, cfg)?;
    v.regularized = !(s.re > 1.0);
    Ok(v)
}

fn generator_from(i_reg: GeneratorValue, s: Complex64) -> GeneratorValue {
    let c = -4.0 / PI.sqrt();
    GeneratorValue {
        value: c * (s * i_reg.value + 1.0),
        quadrature_error: 4.0 / PI.sqrt() * s.norm() * i_reg.quadrature_error,
        regularized: i_reg.regularized,
    }
}

/// `z(s) = −(4/√π) s (I_reg(s) + 1/s)` on the critical strip.
pub fn generator_z(s: Complex64, cfg: &QuadratureConfig) -> Result<GeneratorValue> {
    Ok(generator_from(strip_integral_regularized(s, cfg)?, s))
}

/// `z(s)` on `C \ {0, 1}` through the continued integral.
pub fn generator_z_continued(s: Complex64, cfg: &QuadratureConfig) -> Result<GeneratorValue> {
    Ok(generator_from(strip_integral_continued(s, cfg)?, s))
}

/// `−(√π/4) [z(s)/s + z(1−s)/(1−s)]`, which equals `φ(s)` on the strip.
pub fn interpolate_phi(s: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    interpolate_phi_with_error(s, cfg).map(|(v, _)| v)
}

/// [`interpolate_phi`] together with the propagated quadrature error estimate.
pub fn interpolate_phi_with_error(s: Complex64, cfg: &QuadratureConfig) -> Result<(Complex64, f64)> {
    let a = generator_z(s, cfg)?;
    let b = generator_z(1.0 - s, cfg)?;
    let k = PI.sqrt() / 4.0;
    Ok((
        -k * (a.value / s + b.value / (1.0 - s)),
        k * (a.quadrature_error / s.norm() + b.quadrature_error / (1.0 - s).norm()),
    ))
}

/// `∫₀¹ y^{s/2−1} e^{−n²πy} dy = (n²π)^{−s/2} γ(s/2, n²π)`.
pub fn theta_term_integral(s: Complex64, n: u64) -> Result<Complex64> {
    let x = (n * n) as f64 * PI;
    Ok(real_pow(x, -s / 2.0) * lower_incomplete_gamma(s / 2.0, x)?)
}

/// Finite-`N` generator `−(4/√π) s (Σ_{n≤N} ∫₀¹ y^{s/2−1} e^{−n²πy} dy + 1/s)`.
pub fn generator_zn_partial(s: Complex64, n: u64) -> Result<Complex64> {
    if n < 1 {
        return Err(Error::domain("N must be at least 1"));
    }
    if !(s.re > 0.0) {
        return Err(Error::domain("finite-N generator needs Re(s) > 0"));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..=n {
        sum += theta_term_integral(s, k)?;
    }
    Ok(-4.0 / PI.sqrt() * (s * sum + 1.0))
}

/// Finite-`N` generator at every `N` of an increasing list, in one pass.
pub fn generator_zn_sequence(s: Complex64, n_list: &[u64]) -> Result<Vec<Complex64>> {
    if n_list.is_empty() || n_list[0] < 1 || n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("N list must be strictly increasing and start at N >= 1"));
    }
    if !(s.re > 0.0) {
        return Err(Error::domain("finite-N generator needs Re(s) > 0"));
    }
    let mut out = Vec::with_capacity(n_list.len());
    let mut sum = Complex64::new(0.0, 0.0);
    let mut k = 0;
    for &n in n_list {
        while k < n {
            k += 1;
            sum += theta_term_integral(s, k)?;
        }
        out.push(-4.0 / PI.sqrt() * (s * sum + 1.0));
    }
    Ok(out)
}

/// How the growth of the finite-`N` generator is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivergenceEstimator {
    /// Slope of `log|z_{N_k} − z_{N_{k−1}}|` against `log N_k`.
    #[default]
    ConsecutiveIncrements,
    /// Slope of `log|z_N − z_{N_0}|` against `log N` over `N > N_0`.
    FixedBase,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceFit {
    pub exponent: f64,
    pub estimator: DivergenceEstimator,
    pub log_n: Vec<f64>,
    pub log_increment: Vec<f64>,
}

fn least_squares_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len() as f64;
    if x.len() < 2 {
        return Err(Error::DegenerateFit("need at least two points".into()));
    }
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    if !slope.is_finite() || sxx == 0.0 {
        return Err(Error::DegenerateFit("abscissae do not vary".into()));
    }
    Ok(slope)
}

pub(crate) fn slope(x: &[f64], y: &[f64]) -> Result<f64> {
    least_squares_slope(x, y)
}

/// Growth exponent of the finite-`N` generator.
///
/// The partial sums grow like `N^{1−Re s}` on the strip, so the fitted
/// exponent is `≈ 1 − Re s` there and negative for `Re s > 1`.
pub fn divergence_exponent_with(
    s: Complex64,
    n_list: &[u64],
    estimator: DivergenceEstimator,
) -> Result<DivergenceFit> {
    if n_list.len() < 4 {
        return Err(Error::domain("N list needs at least four entries"));
    }
    let z = generator_zn_sequence(s, n_list)?;
    let (log_n, log_increment): (Vec<f64>, Vec<f64>) = match estimator {
        DivergenceEstimator::ConsecutiveIncrements => (1..n_list.len())
            .map(|k| ((n_list[k] as f64).ln(), (z[k] - z[k - 1]).norm().ln()))
            .unzip(),
        DivergenceEstimator::FixedBase => (1..n_list.len())
            .map(|k| ((n_list[k] as f64).ln(), (z[k] - z[0]).norm().ln()))
            .unzip(),
    };
    if log_increment.iter().any(|v| !v.is_finite()) {
        return Err(Error::DegenerateFit("a generator increment vanished".into()));
    }
    let exponent = least_squares_slope(&log_n, &log_increment)?;
    Ok(DivergenceFit {
        exponent,
        estimator,
        log_n,
        log_increment,
    })
}

/// [`divergence_exponent_with`] using consecutive increments.
pub fn divergence_exponent(s: Complex64, n_list: &[u64]) -> Result<f64> {
    divergence_exponent_with(s, n_list, DivergenceEstimator::ConsecutiveIncrements).map(|f| f.exponent)
}

/// Sign-change scan of a real function of `ω` with bisection refinement.
pub(crate) fn scan_real<F>(mut f: F, lo: f64, hi: f64, step: f64, refine_tol: f64) -> Result<Vec<f64>>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || !(step > 0.0) || !(refine_tol > 0.0) {
        return Err(Error::domain("scan needs lo < hi, step > 0 and refine_tol > 0"));
    }
    let count = ((hi - lo) / step).ceil() as usize;
    let mut roots = Vec::new();
    let mut a = lo;
    let mut fa = f(a)?;
    for i in 1..=count {
        let b = (lo + i as f64 * step).min(hi);
        let fb = f(b)?;
        if fa == 0.0 {
            roots.push(a);
        } else if fa * fb < 0.0 {
            let (mut x0, mut x1, mut f0) = (a, b, fa);
            while x1 - x0 > refine_tol {
                let m = 0.5 * (x0 + x1);
                let fm = f(m)?;
                if fm == 0.0 {
                    x0 = m;
                    x1 = m;
                    break;
                }
                if f0 * fm < 0.0 {
                    x1 = m;
                } else {
                    x0 = m;
                    f0 = fm;
                }
            }
            roots.push(0.5 * (x0 + x1));
        }
        a = b;
        fa = fb;
    }
    Ok(roots)
}

/// Highest ordinate [`scan_zeros`] accepts.
pub const MAX_SCAN_HEIGHT: f64 = 60.0;

/// Critical-line zeros of `ξ(1/2 + jω)` on `[lo, hi]`.
///
/// Signs come from `ξ = −(1/4 + ω²) φ` with `φ` in product form, which keeps
/// full relative accuracy where `φ` is exponentially small. The integral form
/// loses it to cancellation above `ω ≈ 40`. Pairs closer than `step` can be
/// missed.
pub fn scan_zeros(omega_lo: f64, omega_hi: f64, step: f64, refine_tol: f64) -> Result<Vec<f64>> {
    if !(omega_lo >= 0.0) {
        return Err(Error::domain("omega_lo must be non-negative"));
    }
    if !(omega_hi <= MAX_SCAN_HEIGHT) {
        return Err(Error::domain(format!("omega_hi must not exceed {MAX_SCAN_HEIGHT}")));
    }
    scan_real(
        |w| phi_product(Complex64::new(0.5, w)).map(|v| -(0.25 + w * w) * v.re),
        omega_lo,
        omega_hi,
        step,
        refine_tol,
    )
}
