//! Bivariate Gaussian expectations with complex means.
//!
//! The density keeps the usual real quadratic form but lets the means be
//! complex, so `p` is complex-valued on the real plane. Expectations are
//! plain double integrals over the real plane, taken in the rotated frame
//! `u = x1 - x2`, `v = x1 + x2` where the real envelope factorizes and the
//! kink of `|x1 - x2|` sits on a panel boundary.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{integrate_pieces, Integral, QuadratureConfig};

/// Means and correlation of the complex-mean Gaussian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianSpec {
    pub m1: Complex64,
    pub m2: Complex64,
    pub rho: f64,
}

impl GaussianSpec {
    pub fn new(m1: Complex64, m2: Complex64, rho: f64) -> Result<Self> {
        let spec = GaussianSpec { m1, m2, rho };
        spec.validate()?;
        Ok(spec)
    }

    /// Real-valued means.
    pub fn real(m1: f64, m2: f64, rho: f64) -> Result<Self> {
        Self::new(Complex64::new(m1, 0.0), Complex64::new(m2, 0.0), rho)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rho.abs() < 1.0) {
            return Err(Error::domain("correlation must satisfy |rho| < 1"));
        }
        if !(self.m1.re.is_finite()
            && self.m1.im.is_finite()
            && self.m2.re.is_finite()
            && self.m2.im.is_finite())
        {
            return Err(Error::domain("means must be finite"));
        }
        Ok(())
    }

    /// Same means, different correlation.
    pub fn with_rho(&self, rho: f64) -> Result<Self> {
        Self::new(self.m1, self.m2, rho)
    }

    /// Factor by which `|p|` exceeds the real Gaussian centred at `Re m`:
    /// `exp(bᵀ Σ⁻¹ b / 2)` with `b = Im m`.
    pub fn magnification(&self) -> f64 {
        (0.5 * self.imag_quadratic()).exp()
    }

    fn imag_quadratic(&self) -> f64 {
        let (b1, b2) = (self.m1.im, self.m2.im);
        (b1 * b1 + b2 * b2 - 2.0 * self.rho * b1 * b2) / (1.0 - self.rho * self.rho)
    }
}

/// The density at `(x1, x2)`.
pub fn density(x1: f64, x2: f64, spec: &GaussianSpec) -> Result<Complex64> {
    spec.validate()?;
    Ok(density_unchecked(x1, x2, spec))
}

fn density_unchecked(x1: f64, x2: f64, spec: &GaussianSpec) -> Complex64 {
    let rho = spec.rho;
    let one_m = 1.0 - rho * rho;
    let d1 = x1 - spec.m1;
    let d2 = x2 - spec.m2;
    let q = d1 * d1 + d2 * d2 - 2.0 * rho * d1 * d2;
    (-q / (2.0 * one_m)).exp() / (2.0 * PI * one_m.sqrt())
}

/// Integration box and integrator shared by every expectation.
fn plane_integral<F>(mut f: F, spec: &GaussianSpec, cfg: &QuadratureConfig) -> Result<Integral>
where
    F: FnMut(f64, f64) -> Complex64,
{
    spec.validate()?;
    cfg.validate()?;
    let rho = spec.rho;
    let su = (2.0 * (1.0 - rho)).sqrt();
    let sv = (2.0 * (1.0 + rho)).sqrt();
    let cu = spec.m1.re - spec.m2.re;
    let cv = spec.m1.re + spec.m2.re;
    // Envelope below e^{-42} of the peak magnitude.
    let width = (2.0 * (42.0 + 0.5 * spec.imag_quadratic())).sqrt();
    let (u_lo, u_hi) = (cu - width * su, cu + width * su);
    let (v_lo, v_hi) = (cv - width * sv, cv + width * sv);

    let mut u_points = vec![u_lo];
    if u_lo < 0.0 && 0.0 < u_hi {
        u_points.push(0.0);
    }
    u_points.push(u_hi);
    let v_points = [v_lo, cv, v_hi];

    let mut inner_error = 0.0f64;
    let mut failure: Option<Error> = None;
    let outer = integrate_pieces(
        |u| {
            if failure.is_some() {
                return Complex64::new(0.0, 0.0);
            }
            let inner = integrate_pieces(
                |v| {
                    let x1 = 0.5 * (v + u);
                    let x2 = 0.5 * (v - u);
                    f(x1, x2) * density_unchecked(x1, x2, spec)
                },
                &v_points,
                cfg,
            );
            match inner {
                Ok(r) => {
                    inner_error = inner_error.max(r.error);
                    r.value * 0.5
                }
                Err(e) => {
                    failure = Some(e);
                    Complex64::new(0.0, 0.0)
                }
            }
        },
        &u_points,
        cfg,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let outer = outer?;
    Ok(Integral {
        error: outer.error + 0.5 * inner_error * (u_hi - u_lo),
        ..outer
    })
}

/// `E[f]` for a real nonlinearity.
pub fn expectation<F>(f: F, spec: &GaussianSpec, cfg: &QuadratureConfig) -> Result<Integral>
where
    F: Fn(f64, f64) -> f64,
{
    plane_integral(|x1, x2| Complex64::new(f(x1, x2), 0.0), spec, cfg)
}

/// `E[f]` for a complex-valued weight, e.g. the Fourier kernel.
pub fn expectation_complex<F>(f: F, spec: &GaussianSpec, cfg: &QuadratureConfig) -> Result<Integral>
where
    F: Fn(f64, f64) -> Complex64,
{
    plane_integral(f, spec, cfg)
}

/// A signed sum of specs, written `E[f; s1 ± s2 ± ...]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignedSpecGroup {
    pub terms: Vec<(GaussianSpec, i8)>,
}

impl SignedSpecGroup {
    pub fn new(terms: Vec<(GaussianSpec, i8)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::domain("a spec group needs at least one term"));
        }
        for (spec, sign) in &terms {
            spec.validate()?;
            if *sign != 1 && *sign != -1 {
                return Err(Error::domain("group signs must be +1 or -1"));
            }
        }
        Ok(SignedSpecGroup { terms })
    }

    /// `(α,0) s0 (−α,0) s1 (0,α) s2 (0,−α)` with leading sign +1 and the given signs after it.
    pub fn shifted(alpha: Complex64, rho: f64, signs: [i8; 3]) -> Result<Self> {
        let z = Complex64::new(0.0, 0.0);
        Self::new(vec![
            (GaussianSpec::new(alpha, z, rho)?, 1),
            (GaussianSpec::new(-alpha, z, rho)?, signs[0]),
            (GaussianSpec::new(z, alpha, rho)?, signs[1]),
            (GaussianSpec::new(z, -alpha, rho)?, signs[2]),
        ])
    }

    /// All four shifts with a plus sign.
    pub fn four_shift(alpha: Complex64, rho: f64) -> Result<Self> {
        Self::shifted(alpha, rho, [1, 1, 1])
    }

    /// The sign pattern `(α,0) − (−α,0) + (0,−α) − (0,α)` that multiplies `sgn(x1 − x2)`.
    pub fn sign_pattern(alpha: Complex64, rho: f64) -> Result<Self> {
        let z = Complex64::new(0.0, 0.0);
        Self::new(vec![
            (GaussianSpec::new(alpha, z, rho)?, 1),
            (GaussianSpec::new(-alpha, z, rho)?, -1),
            (GaussianSpec::new(z, -alpha, rho)?, 1),
            (GaussianSpec::new(z, alpha, rho)?, -1),
        ])
    }

    pub fn with_rho(&self, rho: f64) -> Result<Self> {
        Self::new(
            self.terms
                .iter()
                .map(|(s, k)| s.with_rho(rho).map(|s| (s, *k)))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

/// Signed sum of expectations over a group.
pub fn expectation_group<F>(f: F, group: &SignedSpecGroup, cfg: &QuadratureConfig) -> Result<Integral>
where
    F: Fn(f64, f64) -> f64,
{
    let mut acc = Integral::zero();
    for (spec, sign) in &group.terms {
        let r = expectation(&f, spec, cfg)?;
        acc = acc.join(r.scale(Complex64::new(*sign as f64, 0.0)));
    }
    Ok(acc)
}

/// `M(w1, w2) = exp(−w1²/2 − w2²/2 − ρ w1 w2 + j m1 w1 + j m2 w2)`.
pub fn characteristic_function(w1: Complex64, w2: Complex64, spec: &GaussianSpec) -> Complex64 {
    let j = Complex64::i();
    (-0.5 * w1 * w1 - 0.5 * w2 * w2 - spec.rho * w1 * w2 + j * (spec.m1 * w1 + spec.m2 * w2)).exp()
}

/// Which diagonal the coincidence integral runs along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `∫ p[x, x; (0, α, ρ)] dx`
    Plus,
    /// `∫ p[x, −x; (0, α, ρ)] dx`
    Minus,
}

/// Closed form of the diagonal integrals of the density.
pub fn coincidence_integral(alpha: Complex64, rho: f64, branch: Branch) -> Result<Complex64> {
    if !(rho.abs() < 1.0) {
        return Err(Error::domain("correlation must satisfy |rho| < 1"));
    }
    let k = match branch {
        Branch::Plus => 1.0 - rho,
        Branch::Minus => 1.0 + rho,
    };
    Ok((-alpha * alpha / (4.0 * k)).exp() / (2.0 * PI.sqrt() * k.sqrt()))
}

/// Sign-corrected derivative of the four-shift expectation of `|x1 − x2|` in ρ.
pub fn lemma2_rhs(alpha: Complex64, rho: f64) -> Result<Complex64> {
    if !(rho.abs() < 1.0) {
        return Err(Error::domain("correlation must satisfy |rho| < 1"));
    }
    let k = 1.0 - rho;
    Ok(-(4.0 / PI.sqrt()) / k.sqrt() * (-alpha * alpha / (4.0 * k)).exp())
}

/// Mixed partial `∂²f/∂x1∂x2`, either a smooth function or a multiple of `δ(x1 − x2)`.
#[derive(Debug, Clone, Copy)]
pub enum MixedPartial {
    Smooth(fn(f64, f64) -> f64),
    DiagonalDelta(f64),
}

/// A nonlinearity together with the derivatives Price's identity needs.
#[derive(Debug, Clone, Copy)]
pub struct Nonlinearity {
    pub name: &'static str,
    pub f: fn(f64, f64) -> f64,
    pub d1: fn(f64, f64) -> f64,
    pub d2: fn(f64, f64) -> f64,
    pub d12: MixedPartial,
}

fn sgn(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

impl Nonlinearity {
    pub fn product() -> Self {
        Nonlinearity {
            name: "x1*x2",
            f: |a, b| a * b,
            d1: |_, b| b,
            d2: |a, _| a,
            d12: MixedPartial::Smooth(|_, _| 1.0),
        }
    }

    pub fn abs_diff() -> Self {
        Nonlinearity {
            name: "|x1-x2|",
            f: |a, b| (a - b).abs(),
            d1: |a, b| sgn(a - b),
            d2: |a, b| -sgn(a - b),
            d12: MixedPartial::DiagonalDelta(-2.0),
        }
    }

    pub fn squared_product() -> Self {
        Nonlinearity {
            name: "x1^2*x2^2",
            f: |a, b| a * a * b * b,
            d1: |a, b| 2.0 * a * b * b,
            d2: |a, b| 2.0 * a * a * b,
            d12: MixedPartial::Smooth(|a, b| 4.0 * a * b),
        }
    }

    pub fn all() -> [Nonlinearity; 3] {
        [Self::product(), Self::abs_diff(), Self::squared_product()]
    }
}

/// Both sides of the extended Price identity at one spec.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriceCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
    /// Summed quadrature error estimates of all expectations involved.
    pub quadrature_error: f64,
}

/// Finite-difference `∂/∂ρ E[f]` against `E[f₁₂] + m1' E[f₁] + m2' E[f₂]`.
///
/// The means move linearly with ρ at the given rates.
pub fn price_check(
    nl: &Nonlinearity,
    spec: &GaussianSpec,
    m1_rate: Complex64,
    m2_rate: Complex64,
    h: f64,
    cfg: &QuadratureConfig,
) -> Result<PriceCheck> {
    spec.validate()?;
    if !(h > 0.0) {
        return Err(Error::domain("finite-difference step must be positive"));
    }
    let shifted = |dir: f64| {
        GaussianSpec::new(
            spec.m1 + m1_rate * (dir * h),
            spec.m2 + m2_rate * (dir * h),
            spec.rho + dir * h,
        )
    };
    let up = expectation(nl.f, &shifted(1.0)?, cfg)?;
    let down = expectation(nl.f, &shifted(-1.0)?, cfg)?;
    let lhs = (up.value - down.value) / (2.0 * h);

    let e1 = expectation(nl.d1, spec, cfg)?;
    let e2 = expectation(nl.d2, spec, cfg)?;
    let (e12, e12_err) = match nl.d12 {
        MixedPartial::Smooth(g) => {
            let r = expectation(g, spec, cfg)?;
            (r.value, r.error)
        }
        MixedPartial::DiagonalDelta(w) => (
            w * coincidence_integral(spec.m1 - spec.m2, spec.rho, Branch::Plus)?,
            0.0,
        ),
    };
    let rhs = e12 + m1_rate * e1.value + m2_rate * e2.value;
    Ok(PriceCheck {
        lhs,
        rhs,
        residual: (lhs - rhs).norm(),
        quadrature_error: (up.error + down.error) / (2.0 * h)
            + e12_err
            + m1_rate.norm() * e1.error
            + m2_rate.norm() * e2.error,
    })
}

/// Central difference in ρ of the group expectation of `f`.
pub fn group_rho_derivative<F>(
    f: F,
    group: &SignedSpecGroup,
    h: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64>
where
    F: Fn(f64, f64) -> f64,
{
    let rho = group.terms[0].0.rho;
    let up = expectation_group(&f, &group.with_rho(rho + h)?, cfg)?;
    let down = expectation_group(&f, &group.with_rho(rho - h)?, cfg)?;
    Ok((up.value - down.value) / (2.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn origin_value() {
        let spec = GaussianSpec::real(0.0, 0.0, 0.0).unwrap();
        let p = density(0.0, 0.0, &spec).unwrap();
        assert!((p - 1.0 / (2.0 * PI)).norm() < 1e-16);
    }

    #[test]
    fn rejects_unit_correlation() {
        assert!(GaussianSpec::real(0.0, 0.0, 1.0).is_err());
        assert!(coincidence_integral(c(0.0, 0.0), -1.0, Branch::Plus).is_err());
    }

    #[test]
    fn magnification_bounds_density() {
        let spec = GaussianSpec::new(c(0.2, 0.7), c(-0.1, 0.3), 0.4).unwrap();
        let real = GaussianSpec::real(0.2, -0.1, 0.4).unwrap();
        for &(x1, x2) in &[(0.0, 0.0), (1.0, -0.5), (-2.0, 0.3)] {
            let a = density(x1, x2, &spec).unwrap().norm();
            let b = density(x1, x2, &real).unwrap().re * spec.magnification();
            assert!((a - b).abs() < 1e-14 * b.max(1e-300));
        }
    }

    #[test]
    fn characteristic_function_at_origin() {
        let spec = GaussianSpec::new(c(0.3, 1.0), c(0.0, -2.0), 0.2).unwrap();
        let m = characteristic_function(c(0.0, 0.0), c(0.0, 0.0), &spec);
        assert!((m - 1.0).norm() < 1e-15);
    }

    #[test]
    fn lemma2_at_origin() {
        let v = lemma2_rhs(c(0.0, 0.0), 0.0).unwrap();
        assert!((v + 4.0 / PI.sqrt()).norm() < 1e-15);
    }

    #[test]
    fn sign_pattern_layout() {
        let g = SignedSpecGroup::sign_pattern(c(0.5, 0.0), 0.2).unwrap();
        let signs: Vec<i8> = g.terms.iter().map(|t| t.1).collect();
        assert_eq!(signs, vec![1, -1, 1, -1]);
        assert_eq!(g.terms[2].0.m2, c(-0.5, 0.0));
    }
}
