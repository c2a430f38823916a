//! Independent evaluations of ζ(s) and the Hurwitz zeta function.
//!
//! `zeta_oracle` sums the alternating eta series with Borwein's acceleration;
//! `hurwitz_zeta` uses Euler–Maclaurin. The two share no code, so agreement
//! between them is a meaningful check.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// B_{2j} for j = 1..=15.
#[allow(clippy::excessive_precision)]
pub(crate) const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

fn cpow_real(base: f64, s: Complex64) -> Complex64 {
    (s * base.ln()).exp()
}

/// ζ(s) for Re s > 0, s ≠ 1.
pub fn zeta_oracle(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole { at: s });
    }
    if !(s.re > 0.0) {
        return Err(Error::domain("zeta_oracle needs Re(s) > 0"));
    }
    let denom = 1.0 - cpow_real(2.0, 1.0 - s);
    if denom.norm() == 0.0 {
        return Err(Error::Pole { at: s });
    }
    Ok(eta_borwein(s) / denom)
}

/// Dirichlet eta function via Borwein's algorithm 2.
fn eta_borwein(s: Complex64) -> Complex64 {
    // Error ≲ 3 (1 + 2|t|) e^{π|t|/2} / (3 + √8)^n.
    let t = s.im.abs();
    let want = (3.0 * (1.0 + 2.0 * t)).ln() + std::f64::consts::FRAC_PI_2 * t + 38.0;
    let n = ((want / (3.0 + 8f64.sqrt()).ln()).ceil() as usize).clamp(20, 400);

    // e_i = n (n+i-1)! 4^i / ((n-i)! (2i)!), d_k = Σ_{i<=k} e_i.
    let mut e = vec![0.0f64; n + 1];
    e[0] = 1.0;
    for i in 1..=n {
        let fi = i as f64;
        let nf = n as f64;
        e[i] = e[i - 1] * 4.0 * (nf + fi - 1.0) * (nf - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
    }
    let d_n: f64 = e.iter().sum();
    // tail[k] = (d_n - d_k) / d_n = Σ_{i>k} e_i / d_n, accumulated from the top.
    let mut sum = Complex64::new(0.0, 0.0);
    let mut tail = 0.0;
    for k in (0..n).rev() {
        tail += e[k + 1];
        let term = cpow_real((k + 1) as f64, -s) * (tail / d_n);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// Rising factorial pieces and the Euler–Maclaurin core shared by the Hurwitz routines.
///
/// Returns ζ(s, a) with the pole term `(N+a)^{1-s}/(s-1)` replaced by
/// `((N+a)^{1-s} - 1)/(s-1)` when `drop_pole` is set, which stays finite at s = 1.
fn hurwitz_em(s: Complex64, a: f64, drop_pole: bool) -> Complex64 {
    let n_head = (s.norm().ceil() as usize + 15).max(15);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n_head {
        sum += cpow_real(k as f64 + a, -s);
    }
    let x = n_head as f64 + a;
    let lnx = x.ln();
    let one_minus_s = 1.0 - s;
    let pole_term = if drop_pole {
        // (x^{1-s} - 1)/(s - 1) = -ln x · expm1(w)/w, w = (1-s) ln x
        let w = one_minus_s * lnx;
        let ratio = if w.norm() < 1e-4 {
            1.0 + w / 2.0 + w * w / 6.0 + w * w * w / 24.0
        } else {
            (w.exp() - 1.0) / w
        };
        -ratio * lnx
    } else {
        cpow_real(x, one_minus_s) / (s - 1.0)
    };
    sum += pole_term;
    let x_ms = cpow_real(x, -s);
    sum += x_ms * 0.5;

    // Σ B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1}
    let mut rising = s; // (s)_1
    let mut xpow = x_ms / x; // x^{-s-1}
    let mut fact = 2.0; // (2j)!
    for (j, &b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = rising * xpow * (b / fact);
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
        let m = (2 * j + 1) as f64;
        rising *= (s + m) * (s + m + 1.0);
        xpow /= x * x;
        fact *= (m + 2.0) * (m + 3.0);
    }
    sum
}

/// Hurwitz zeta ζ(s, a) for Re s > 0, s ≠ 1, 0 < a <= 1.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole { at: s });
    }
    if !(s.re > 0.0) {
        return Err(Error::domain("hurwitz_zeta needs Re(s) > 0"));
    }
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::domain("hurwitz_zeta needs 0 < a <= 1"));
    }
    Ok(hurwitz_em(s, a, false))
}

/// ζ(s, a) - 1/(s-1): the Hurwitz function with its pole removed, finite at s = 1.
pub fn hurwitz_zeta_regular(s: Complex64, a: f64) -> Result<Complex64> {
    if !(s.re > 0.0) {
        return Err(Error::domain("hurwitz_zeta_regular needs Re(s) > 0"));
    }
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::domain("hurwitz_zeta_regular needs 0 < a <= 1"));
    }
    Ok(hurwitz_em(s, a, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zeta_two() {
        let z = zeta_oracle(c(2.0, 0.0)).unwrap();
        assert!((z - PI * PI / 6.0).norm() < 1e-12);
    }

    #[test]
    fn zeta_half_against_euler_maclaurin() {
        let a = zeta_oracle(c(0.5, 0.0)).unwrap();
        let b = hurwitz_zeta(c(0.5, 0.0), 1.0).unwrap();
        assert!((a - b).norm() < 1e-10);
        // mpmath: ζ(1/2) = -1.4603545088095868...
        assert!((a.re + 1.460_354_508_809_586_8).abs() < 1e-12);
    }

    #[test]
    fn zeta_near_first_zero() {
        let z = zeta_oracle(c(0.5, 14.134725)).unwrap();
        assert!(z.norm() < 1e-5);
    }

    #[test]
    fn pole_at_one() {
        assert!(matches!(zeta_oracle(c(1.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(hurwitz_zeta(c(1.0, 0.0), 0.5), Err(Error::Pole { .. })));
    }

    #[test]
    fn hurwitz_closed_forms() {
        let z2 = hurwitz_zeta(c(2.0, 0.0), 1.0).unwrap();
        assert!((z2 - PI * PI / 6.0).norm() < 1e-12);
        let zh = hurwitz_zeta(c(2.0, 0.0), 0.5).unwrap();
        assert!((zh - PI * PI / 2.0).norm() < 1e-12);
    }

    #[test]
    fn hurwitz_complex_reference() {
        // mpmath: zeta(0.7+12j, 0.3)
        let v = hurwitz_zeta(c(0.7, 12.0), 0.3).unwrap();
        let want = c(-2.018_185_184_275_480_9, 2.269_438_462_376_776_4);
        assert!((v - want).norm() < 1e-11, "{v}");
    }

    #[test]
    fn regular_part_matches_full_away_from_pole() {
        let s = c(0.6, 4.0);
        let full = hurwitz_zeta(s, 0.25).unwrap();
        let reg = hurwitz_zeta_regular(s, 0.25).unwrap();
        assert!((full - (reg + 1.0 / (s - 1.0))).norm() < 1e-12);
    }

    #[test]
    fn regular_part_at_one_is_minus_digamma() {
        // ζ(s,1) - 1/(s-1) -> -ψ(1) = Euler's γ
        let v = hurwitz_zeta_regular(c(1.0, 0.0), 1.0).unwrap();
        assert!((v.re - 0.577_215_664_901_532_9).abs() < 1e-13);
    }

    #[test]
    fn bernoulli_table_matches_even_zeta_values() {
        // B_{2j} = (-1)^{j+1} 2 (2j)! ζ(2j) / (2π)^{2j}
        let mut fact = 1.0;
        for (idx, &b) in BERNOULLI_EVEN.iter().enumerate() {
            let j = idx + 1;
            let m = 2 * j;
            fact *= ((m - 1) * m) as f64;
            let big = 20000.0f64;
            let head: f64 = (1..20000).map(|n| (n as f64).powi(-(m as i32))).sum();
            let zeta2j = head + big.powi(1 - m as i32) / (m as f64 - 1.0) + 0.5 * big.powi(-(m as i32));
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            let want = sign * 2.0 * fact * zeta2j / (2.0 * PI).powi(m as i32);
            assert!(((b - want) / want).abs() < 1e-12, "B_{m}");
        }
    }
}
