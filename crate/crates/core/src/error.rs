use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The function has a pole at the requested point.
    #[error("pole at {at}")]
    Pole { at: Complex64 },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not converge: estimate {partial} with error {error:e} after {subdivisions} subdivisions")]
    NonConvergence {
        partial: Complex64,
        error: f64,
        subdivisions: usize,
    },

    /// A least-squares fit had too few usable points or a non-finite result.
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
