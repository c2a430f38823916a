//! Completed Dirichlet L-functions: an independent Hurwitz-based reference,
//! the two-piece theta continuations, generator functions and zero scans.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::character::{DirichletCharacter, GaussConvention, Parity};
use crate::error::{Error, Result};
use crate::numerics::{
    complex_gamma, hurwitz_zeta, hurwitz_zeta_regular, integrate_pieces,
    integrate_singular, real_pow, Integral, QuadratureConfig,
};
use crate::theta::{psi_chi, psi_chi_tilde};
use crate::zeta::{scan_real, strip_integral_regularized, GeneratorValue};

const THETA_TOL: f64 = 1e-18;

/// `L(s, χ) = P^{−s} Σ_{a=1}^{P} χ(a) ζ(s, a/P)`.
pub fn l_oracle(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    if !(s.re > 0.0) {
        return Err(Error::domain("l_oracle needs Re(s) > 0"));
    }
    let p = chi.modulus;
    let principal = chi.is_principal();
    let mut sum = Complex64::new(0.0, 0.0);
    for a in 1..=p {
        let c = chi.value(a as i64);
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        let x = a as f64 / p as f64;
        // Σ χ(a) = 0 removes the pole, so the regular part suffices.
        let h = if principal {
            hurwitz_zeta(s, x)?
        } else {
            hurwitz_zeta_regular(s, x)?
        };
        sum += c * h;
    }
    Ok(real_pow(p as f64, -s) * sum)
}

/// `π^{−(s+a)/2} Γ((s+a)/2) L(s, χ)`, `a = 0` for even and `1` for odd `χ`.
pub fn phi_reference(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    let h = (s + chi.parity_shift() as f64) / 2.0;
    Ok(real_pow(PI, -h) * complex_gamma(h)? * l_oracle(s, chi)?)
}

/// `Λ(s, χ) = (q/π)^{(s+a)/2} Γ((s+a)/2) L(s, χ)` with `q = P`.
pub fn lambda(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    let h = (s + chi.parity_shift() as f64) / 2.0;
    Ok(real_pow(chi.modulus as f64, h) * phi_reference(s, chi)?)
}

/// Root number `ε(χ) = τ(χ) / (i^a √q)` of `Λ(s, χ) = ε Λ(1−s, χ̄)`.
pub fn root_number(chi: &DirichletCharacter) -> Complex64 {
    let tau = chi.gauss_sum(GaussConvention::Standard);
    let ia = if chi.parity == Parity::Odd {
        Complex64::i()
    } else {
        Complex64::new(1.0, 0.0)
    };
    tau / (ia * (chi.modulus as f64).sqrt())
}

/// The theta series matching the character's parity.
fn theta(y: f64, chi: &DirichletCharacter) -> Complex64 {
    let r = match chi.parity {
        Parity::Even => psi_chi(y, chi, THETA_TOL),
        Parity::Odd => psi_chi_tilde(y, chi, THETA_TOL),
    };
    r.map(|t| t.value).unwrap_or(Complex64::new(0.0, 0.0))
}

fn tail_points(lower: f64) -> Vec<f64> {
    let mut pts = vec![lower];
    pts.extend([1.0, 2.0, 4.0, 8.0].into_iter().filter(|&x| x > lower));
    pts.push(f64::INFINITY);
    pts
}

/// `∫_{lower}^∞ y^{s/2−1} Θ_χ(y) dy`, `Θ` = `Ψ_χ` (even) or `Ψ̃_χ` (odd).
pub fn theta_mellin_from(
    s: Complex64,
    chi: &DirichletCharacter,
    lower: f64,
    cfg: &QuadratureConfig,
) -> Result<Integral> {
    if !(lower > 0.0) {
        return Err(Error::domain("lower limit must be positive"));
    }
    integrate_pieces(
        |y| real_pow(y, s / 2.0 - 1.0) * theta(y, chi),
        &tail_points(lower),
        cfg,
    )
}

/// `∫₀^∞ y^{s/2−1} Θ_χ(y) dy`, the integral definition of the completed L-function.
///
/// Converges for every `s` when `χ` is primitive mod `P > 1`; otherwise `Θ_χ`
/// grows like `y^{−1/2}` at the origin and `Re s > 1` is required.
pub fn integral_definition(
    s: Complex64,
    chi: &DirichletCharacter,
    cfg: &QuadratureConfig,
) -> Result<Integral> {
    let decays_at_origin = chi.primitive && chi.modulus > 1;
    if decays_at_origin {
        let p = chi.modulus as f64;
        let head = integrate_pieces(
            |y| real_pow(y, s / 2.0 - 1.0) * theta(y, chi),
            &[0.0, 1.0 / (p * p), 1.0 / p],
            cfg,
        )?;
        return Ok(head.join(theta_mellin_from(s, chi, 1.0 / p, cfg)?));
    }
    if !(s.re > 1.0) {
        return Err(Error::domain(
            "the integral definition diverges at the origin unless Re(s) > 1",
        ));
    }
    let head = integrate_singular(|y| real_pow(y, s / 2.0 - 1.0) * theta(y, chi), 0.0, 1.0, cfg)?;
    Ok(head.join(theta_mellin_from(s, chi, 1.0, cfg)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LFormula {
    PaperEven,
    PaperOdd,
    Reference,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompletedLValue {
    pub value: Complex64,
    pub formula: LFormula,
    /// `|value − phi_reference|`, absent for the reference itself.
    pub residual_vs_reference: Option<f64>,
    pub quadrature_error: f64,
}

fn require_primitive(chi: &DirichletCharacter, parity: Parity) -> Result<()> {
    if !chi.primitive {
        return Err(Error::domain("character must be primitive"));
    }
    if chi.parity != parity {
        return Err(Error::domain(format!("character must be {parity:?}")));
    }
    Ok(())
}

/// The two-piece continuation, `prefactor` multiplying the conjugate-character piece.
fn two_piece(
    s: Complex64,
    chi: &DirichletCharacter,
    prefactor: Complex64,
    formula: LFormula,
    cfg: &QuadratureConfig,
) -> Result<CompletedLValue> {
    let p = chi.modulus as f64;
    let bar = chi.conj();
    let a = theta_mellin_from(s, chi, 1.0 / p, cfg)?;
    let b = theta_mellin_from(1.0 - s, &bar, 1.0 / p, cfg)?;
    let value = a.value + prefactor * b.value;
    let reference = phi_reference(s, chi)?;
    Ok(CompletedLValue {
        value,
        formula,
        residual_vs_reference: Some((value - reference).norm()),
        quadrature_error: a.error + prefactor.norm() * b.error,
    })
}

/// `∫_{1/P}^∞ y^{s/2−1} Ψ_χ dy + (P^{1−s}/G(χ̄, P)) ∫_{1/P}^∞ y^{(1−s)/2−1} Ψ_χ̄ dy`.
pub fn phi_even_paper(
    s: Complex64,
    chi: &DirichletCharacter,
    cfg: &QuadratureConfig,
) -> Result<CompletedLValue> {
    require_primitive(chi, Parity::Even)?;
    let p = chi.modulus as f64;
    let g = chi.conj().gauss_sum(GaussConvention::Paper);
    two_piece(s, chi, real_pow(p, 1.0 - s) / g, LFormula::PaperEven, cfg)
}

/// `∫_{1/P}^∞ y^{s/2−1} Ψ̃_χ dy + (−j P^{1−s}/G(χ̄, P)) ∫_{1/P}^∞ y^{(1−s)/2−1} Ψ̃_χ̄ dy`.
pub fn phi_odd_paper(
    s: Complex64,
    chi: &DirichletCharacter,
    cfg: &QuadratureConfig,
) -> Result<CompletedLValue> {
    require_primitive(chi, Parity::Odd)?;
    let p = chi.modulus as f64;
    let g = chi.conj().gauss_sum(GaussConvention::Paper);
    two_piece(s, chi, -Complex64::i() * real_pow(p, 1.0 - s) / g, LFormula::PaperOdd, cfg)
}

/// Two-piece theta continuation, dispatched on parity.
pub fn phi_paper(s: Complex64, chi: &DirichletCharacter, cfg: &QuadratureConfig) -> Result<CompletedLValue> {
    match chi.parity {
        Parity::Even => phi_even_paper(s, chi, cfg),
        Parity::Odd => phi_odd_paper(s, chi, cfg),
    }
}

fn parity_factor(s: Complex64, parity: Parity) -> Complex64 {
    match parity {
        Parity::Even => s,
        Parity::Odd => s + 1.0,
    }
}

/// Generator `z(s) = (4c/√π) ∫₀¹ y^{s/2−1} Θ_χ(y/P) dy`, `c = s` (even) or `s + 1` (odd).
///
/// The integral is moved to `[1/P, ∞)` by the theta transformation:
/// `∫₀^{1/P} y^{s/2−1} Θ_χ(y) dy = κ τ(χ) P^{−s} ∫_{1/P}^∞ u^{(1−s)/2−1} Θ_χ̄(u) du`
/// with `κ = 1` (even) or `−j` (odd). For `P = 1` the zeta regularization is used.
pub fn generator_l(
    s: Complex64,
    chi: &DirichletCharacter,
    parity_branch: Parity,
    cfg: &QuadratureConfig,
) -> Result<GeneratorValue> {
    if !(s.re > 0.0 && s.re < 1.0) {
        return Err(Error::domain("s must lie in the critical strip 0 < Re(s) < 1"));
    }
    require_primitive(chi, parity_branch)?;
    let c = 4.0 / PI.sqrt() * parity_factor(s, parity_branch);
    if chi.modulus == 1 {
        let i_reg = strip_integral_regularized(s, cfg)?;
        return Ok(GeneratorValue {
            value: c * i_reg.value,
            quadrature_error: c.norm() * i_reg.quadrature_error,
            regularized: true,
        });
    }
    let p = chi.modulus as f64;
    let tau = chi.gauss_sum(GaussConvention::Standard);
    let kappa = match parity_branch {
        Parity::Even => Complex64::new(1.0, 0.0),
        Parity::Odd => -Complex64::i(),
    };
    let tail = theta_mellin_from(1.0 - s, &chi.conj(), 1.0 / p, cfg)?;
    let scale = c * real_pow(p, s / 2.0) * kappa * tau * real_pow(p, -s);
    Ok(GeneratorValue {
        value: scale * tail.value,
        quadrature_error: scale.norm() * tail.error,
        regularized: false,
    })
}

/// The generator by direct quadrature of `∫₀¹ y^{s/2−1} Θ_χ(y/P) dy`, for `P > 1`.
pub fn generator_l_direct(
    s: Complex64,
    chi: &DirichletCharacter,
    parity_branch: Parity,
    cfg: &QuadratureConfig,
) -> Result<GeneratorValue> {
    require_primitive(chi, parity_branch)?;
    if chi.modulus == 1 {
        return Err(Error::domain("direct quadrature diverges for the trivial character"));
    }
    let p = chi.modulus as f64;
    let c = 4.0 / PI.sqrt() * parity_factor(s, parity_branch);
    let r = integrate_pieces(
        |y| real_pow(y, s / 2.0 - 1.0) * theta(y / p, chi),
        &[0.0, 1.0 / p, 1.0],
        cfg,
    )?;
    Ok(GeneratorValue {
        value: c * r.value,
        quadrature_error: c.norm() * r.error,
        regularized: false,
    })
}

/// The generator interpolation evaluated as printed and with the mirror
/// prefactor `P^{−(1−s)/2}` replaced by `P^{+(1−s)/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LInterpolation {
    pub reference: Complex64,
    pub paper: Complex64,
    pub corrected: Complex64,
    pub paper_residual: f64,
    pub corrected_residual: f64,
    pub quadrature_error: f64,
}

pub fn l_interpolation(
    s: Complex64,
    chi: &DirichletCharacter,
    cfg: &QuadratureConfig,
) -> Result<LInterpolation> {
    let parity = chi.parity;
    let bar = chi.conj();
    let z = generator_l(s, chi, parity, cfg)?;
    let zm = generator_l(1.0 - s, &bar, parity, cfg)?;
    let p = chi.modulus as f64;
    let g = bar.gauss_sum(GaussConvention::Paper);
    let (first, mirror) = match parity {
        Parity::Even => (z.value / s, zm.value / (1.0 - s) / g),
        Parity::Odd => (z.value / (s + 1.0), -Complex64::i() * zm.value / (2.0 - s) / g),
    };
    let k = PI.sqrt() / 4.0;
    let head = real_pow(p, -s / 2.0) * first;
    let paper = k * (head + real_pow(p, -(1.0 - s) / 2.0) * mirror);
    let corrected = k * (head + real_pow(p, (1.0 - s) / 2.0) * mirror);
    let reference = phi_reference(s, chi)?;
    Ok(LInterpolation {
        reference,
        paper,
        corrected,
        paper_residual: (paper - reference).norm(),
        corrected_residual: (corrected - reference).norm(),
        quadrature_error: z.quadrature_error + zm.quadrature_error,
    })
}

/// Which completed function a zero scan evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanFormula {
    #[default]
    Reference,
    Paper,
}

/// `ε^{−1/2} Λ(1/2 + jω, χ)`, real for primitive `χ`.
pub fn hardy_l(omega: f64, chi: &DirichletCharacter, formula: ScanFormula, cfg: &QuadratureConfig) -> Result<f64> {
    let s = Complex64::new(0.5, omega);
    let rot = root_number(chi).sqrt().inv();
    let lam = match formula {
        ScanFormula::Reference => lambda(s, chi)?,
        ScanFormula::Paper => {
            let h = (s + chi.parity_shift() as f64) / 2.0;
            real_pow(chi.modulus as f64, h) * phi_paper(s, chi, cfg)?.value
        }
    };
    Ok((rot * lam).re)
}

/// Critical-line zeros of `L(s, χ)` on `[lo, hi]`.
pub fn scan_l_zeros(
    chi: &DirichletCharacter,
    omega_lo: f64,
    omega_hi: f64,
    step: f64,
    refine_tol: f64,
    formula: ScanFormula,
    cfg: &QuadratureConfig,
) -> Result<Vec<f64>> {
    if !chi.primitive {
        return Err(Error::domain("zero scans need a primitive character"));
    }
    scan_real(|w| hardy_l(w, chi, formula, cfg), omega_lo, omega_hi, step, refine_tol)
}

/// `(Σ_{n≤N} n^k χ(n), Σ_{n≤N} n^k χ̄(n))`.
pub fn conjugate_sums(chi: &DirichletCharacter, k: u32, n_max: u64) -> (Complex64, Complex64) {
    let bar = chi.conj();
    let mut a = Complex64::new(0.0, 0.0);
    let mut b = Complex64::new(0.0, 0.0);
    for n in 1..=n_max {
        let w = (n as f64).powi(k as i32);
        a += chi.value(n as i64) * w;
        b += bar.value(n as i64) * w;
    }
    (a, b)
}

/// Partial Dirichlet series `Σ_{n≤N} χ(n) n^{−s}` plus an integral tail estimate, for `Re s > 1`.
pub fn dirichlet_series(s: Complex64, chi: &DirichletCharacter, n_max: u64) -> Result<(Complex64, f64)> {
    if !(s.re > 1.0) {
        return Err(Error::domain("the Dirichlet series converges only for Re(s) > 1"));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for n in (1..=n_max).rev() {
        sum += chi.value(n as i64) * real_pow(n as f64, -s);
    }
    let bound = (n_max as f64).powf(1.0 - s.re) / (s.re - 1.0);
    Ok((sum, bound))
}
