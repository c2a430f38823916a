//! Dirichlet characters and completed L-functions.

pub mod character;
pub mod lfunc;

pub use character::{
    character, enumerate_characters, gauss_sum, primitive_characters, totient, DirichletCharacter,
    GaussConvention, Parity,
};
pub use lfunc::*;
