//! Shared numerical kernels: quadrature, special functions, seeded sampling.

pub mod gamma;
pub mod quadrature;
pub mod rng;
pub mod zeta;

pub use gamma::{complex_gamma, gamma_real, lower_incomplete_gamma};
pub use quadrature::{
    integrate, integrate_pieces, integrate_singular, integrate_with, Integral, QuadratureConfig,
    Singularity,
};
pub use rng::{sample_bivariate, sample_normal, RngSeed};
pub use zeta::{hurwitz_zeta, hurwitz_zeta_regular, zeta_oracle};

use num_complex::Complex64;

/// `base^s` for a positive real base.
pub fn real_pow(base: f64, s: Complex64) -> Complex64 {
    (s * base.ln()).exp()
}

/// Complex error function.
pub fn erf(z: Complex64) -> Complex64 {
    errorfunctions::ComplexErrorFunctions::erf(z)
}

/// Scaled complementary error function `e^{z²} erfc(z)`.
pub fn erfcx(z: Complex64) -> Complex64 {
    errorfunctions::ComplexErrorFunctions::erfcx(z)
}

/// Real error function.
pub fn erf_real(x: f64) -> f64 {
    errorfunctions::RealErrorFunctions::erf(x)
}
