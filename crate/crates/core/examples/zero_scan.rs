//! Sign changes of ξ on the critical line, refined by bisection.
//!
//! $ cargo run --example zero_scan

use zetalab::numerics::QuadratureConfig;
use zetalab::zeta::{phi_oracle, scan_zeros, MAX_SCAN_HEIGHT};
use zetalab::Complex64;

fn main() -> zetalab::Result<()> {
    let cfg = QuadratureConfig::default();
    for (i, w) in scan_zeros(10.0, MAX_SCAN_HEIGHT, 0.05, 1e-12)?.iter().enumerate() {
        let phi = phi_oracle(Complex64::new(0.5, *w), &cfg)?;
        println!("gamma_{:<2} = {w:.12}   |phi oracle| = {:.1e}", i + 1, phi.norm());
    }
    Ok(())
}
