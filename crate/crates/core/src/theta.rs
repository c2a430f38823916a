//! Theta series `Ψ(y)`, `Ψ_χ(y)` and `Ψ̃_χ(y)` with certified truncation.
//!
//! Every sum stops at the first `N` whose geometric tail majorant is below
//! the requested tolerance. For small `y` the series are first carried to
//! argument `1/(q²y)` by the Poisson-summation identity, where a handful of
//! terms suffice and no cancellation occurs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dirichlet::{DirichletCharacter, GaussConvention, Parity};
use crate::error::{Error, Result};

/// Below this argument `psi` sums at `1/y` instead.
pub const SMALL_Y: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaEval {
    pub y: f64,
    pub value: Complex64,
    pub terms_used: usize,
    /// Bound on the neglected tail, already scaled by any transform factor.
    pub truncation_bound: f64,
}

fn check(y: f64, tol: f64) -> Result<()> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::domain("theta series need finite y > 0"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("theta tolerance must be positive"));
    }
    Ok(())
}

/// Bound on `Σ_{n>N} n^w e^{−πn²y}`, `w ∈ {0, 1}`; infinite while the ratio test is not yet contracting.
fn tail_bound(n: usize, y: f64, weighted: bool) -> f64 {
    let nf = n as f64;
    if !weighted {
        // e^{−N²πy} / (1 − e^{−(2N+1)πy})
        let r = (-(2.0 * nf + 1.0) * std::f64::consts::PI * y).exp();
        return (-nf * nf * std::f64::consts::PI * y).exp() / (1.0 - r);
    }
    let m = nf + 1.0;
    let ratio = (m + 1.0) / m * (-(2.0 * m + 1.0) * std::f64::consts::PI * y).exp();
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    m * (-m * m * std::f64::consts::PI * y).exp() / (1.0 - ratio)
}

/// `Σ_{n=1}^{N} c(n) n^w e^{−πn²y}` with `N` the first index meeting the tail bound.
fn direct_sum<C>(y: f64, tol: f64, weighted: bool, coef: C) -> ThetaEval
where
    C: Fn(u64) -> Complex64,
{
    let mut sum = Complex64::new(0.0, 0.0);
    let mut n = 0usize;
    loop {
        n += 1;
        let nf = n as f64;
        let w = if weighted { nf } else { 1.0 };
        sum += coef(n as u64) * (w * (-std::f64::consts::PI * nf * nf * y).exp());
        let bound = tail_bound(n, y, weighted);
        if bound <= tol {
            return ThetaEval {
                y,
                value: sum,
                terms_used: n,
                truncation_bound: bound,
            };
        }
    }
}

/// `Ψ(y) = Σ_{n≥1} e^{−n²πy}`.
pub fn psi(y: f64, tol: f64) -> Result<ThetaEval> {
    check(y, tol)?;
    if y < SMALL_Y {
        // Ψ(y) = (Ψ(1/y) + 1/2)/√y − 1/2
        let sy = y.sqrt();
        let inner = direct_sum(1.0 / y, tol * sy, false, |_| Complex64::new(1.0, 0.0));
        return Ok(ThetaEval {
            y,
            value: (inner.value + 0.5) / sy - 0.5,
            terms_used: inner.terms_used,
            truncation_bound: inner.truncation_bound / sy,
        });
    }
    Ok(direct_sum(y, tol, false, |_| Complex64::new(1.0, 0.0)))
}

/// `|2Ψ(1/y) + 1 − √y (2Ψ(y) + 1)|`.
pub fn psi_functional_residual(y: f64) -> Result<f64> {
    let tol = 1e-17;
    let a = psi(1.0 / y, tol)?.value.re;
    let b = psi(y, tol)?.value.re;
    Ok((2.0 * a + 1.0 - y.sqrt() * (2.0 * b + 1.0)).abs())
}

/// Whether the Poisson transform is usable and worthwhile for this character at `y`.
fn use_transform(chi: &DirichletCharacter, y: f64) -> bool {
    chi.primitive && chi.modulus > 1 && (chi.modulus * chi.modulus) as f64 * y < 1.0
}

/// `Ψ_χ(y) = Σ_{n≥1} χ(n) e^{−πn²y}`.
///
/// For primitive `χ` mod `q > 1` and `q²y < 1` this uses
/// `Ψ_χ(y) = τ(χ)/(q√y) Ψ_χ̄(1/(q²y))` (even `χ`), with `τ` the Gauss sum
/// with positive exponent. Odd characters have no such identity for `Ψ_χ`
/// and are summed directly.
pub fn psi_chi(y: f64, chi: &DirichletCharacter, tol: f64) -> Result<ThetaEval> {
    check(y, tol)?;
    if chi.modulus == 1 {
        return psi(y, tol);
    }
    if chi.parity == Parity::Even && use_transform(chi, y) {
        let q = chi.modulus as f64;
        let factor = chi.gauss_sum(GaussConvention::Standard) / (q * y.sqrt());
        let bar = chi.conj();
        let inner = direct_sum(1.0 / (q * q * y), tol / factor.norm(), false, |n| {
            bar.value(n as i64)
        });
        return Ok(ThetaEval {
            y,
            value: factor * inner.value,
            terms_used: inner.terms_used,
            truncation_bound: inner.truncation_bound * factor.norm(),
        });
    }
    Ok(direct_sum(y, tol, false, |n| chi.value(n as i64)))
}

/// `Ψ̃_χ(y) = Σ_{n≥1} χ(n) n √y e^{−πn²y}`.
///
/// For primitive odd `χ` mod `q > 1` and `q²y < 1` this uses
/// `Ψ̃_χ(y) = τ(χ)/(iq) y^{−1/2} Ψ̃_χ̄(1/(q²y))`.
pub fn psi_chi_tilde(y: f64, chi: &DirichletCharacter, tol: f64) -> Result<ThetaEval> {
    check(y, tol)?;
    let sy = y.sqrt();
    if chi.parity == Parity::Odd && use_transform(chi, y) {
        let q = chi.modulus as f64;
        let big_y = 1.0 / (q * q * y);
        let factor = chi.gauss_sum(GaussConvention::Standard) / (Complex64::i() * q * sy)
            * big_y.sqrt();
        let bar = chi.conj();
        let inner = direct_sum(big_y, tol / factor.norm(), true, |n| bar.value(n as i64));
        return Ok(ThetaEval {
            y,
            value: factor * inner.value,
            terms_used: inner.terms_used,
            truncation_bound: inner.truncation_bound * factor.norm(),
        });
    }
    let inner = direct_sum(y, tol / sy, true, |n| chi.value(n as i64));
    Ok(ThetaEval {
        y,
        value: inner.value * sy,
        terms_used: inner.terms_used,
        truncation_bound: inner.truncation_bound * sy,
    })
}
