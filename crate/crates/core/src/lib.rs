//! Numerical laboratory for the completed Riemann zeta function, Dirichlet
//! L-functions and their representation through complex-mean Gaussian
//! expectations.

pub mod cli;
pub mod dirichlet;
pub mod dynamics;
pub mod error;
pub mod gaussian;
pub mod numerics;
pub mod theta;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
pub use num_complex::Complex64;
