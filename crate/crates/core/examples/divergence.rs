//! Growth of the finite-N generator and the two slope estimators.
//!
//! $ cargo run --example divergence

use zetalab::zeta::{divergence_exponent_with, DivergenceEstimator};
use zetalab::Complex64;

fn main() -> zetalab::Result<()> {
    let n_list = [100, 200, 400, 800, 1600, 3200];
    for re in [0.2, 0.5, 0.8] {
        let s = Complex64::new(re, 5.0);
        let inc = divergence_exponent_with(s, &n_list, DivergenceEstimator::ConsecutiveIncrements)?;
        let base = divergence_exponent_with(s, &n_list, DivergenceEstimator::FixedBase)?;
        println!(
            "Re s = {re}: expected {:.3}, increments {:.4}, fixed base {:.4}",
            1.0 - re,
            inc.exponent,
            base.exponent
        );
    }
    Ok(())
}
