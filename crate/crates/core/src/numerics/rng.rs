//! Seeded, stream-splittable Gaussian sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A (seed, stream) pair; equal pairs reproduce equal sample sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSeed {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngSeed {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        RngSeed { seed, stream_id }
    }

    /// A sibling stream under the same seed.
    pub fn stream(self, stream_id: u64) -> Self {
        RngSeed { stream_id, ..self }
    }

    pub fn rng(self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// `n` draws of a zero-mean, unit-variance bivariate Gaussian with correlation `rho`.
pub fn sample_bivariate(rho: f64, seed: RngSeed, n: usize) -> Result<Vec<(f64, f64)>> {
    if !(rho.abs() < 1.0) {
        return Err(Error::domain("correlation must satisfy |rho| < 1"));
    }
    if n == 0 {
        return Err(Error::domain("sample count must be at least 1"));
    }
    let mut rng = seed.rng();
    let c = (1.0 - rho * rho).sqrt();
    Ok((0..n)
        .map(|_| {
            let z1: f64 = rng.sample(StandardNormal);
            let z2: f64 = rng.sample(StandardNormal);
            (z1, rho * z1 + c * z2)
        })
        .collect())
}

/// `n` draws of N(mean, variance).
pub fn sample_normal(mean: f64, variance: f64, seed: RngSeed, n: usize) -> Result<Vec<f64>> {
    if !(variance >= 0.0) {
        return Err(Error::domain("variance must be non-negative"));
    }
    let mut rng = seed.rng();
    let sd = variance.sqrt();
    Ok((0..n)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            mean + sd * z
        })
        .collect())
}
