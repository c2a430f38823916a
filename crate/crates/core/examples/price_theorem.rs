//! Price's identity for complex-mean Gaussians whose means move with ρ.
//!
//! $ cargo run --release --example price_theorem

use zetalab::gaussian::{price_check, GaussianSpec, Nonlinearity};
use zetalab::numerics::QuadratureConfig;
use zetalab::Complex64;

fn main() -> zetalab::Result<()> {
    let cfg = QuadratureConfig::default();
    let m = Complex64::new(0.4, 0.3);
    let (r1, r2) = (Complex64::new(0.25, 0.0), Complex64::new(-0.4, 0.0));
    for nl in Nonlinearity::all() {
        for rho in [-0.5, 0.0, 0.6] {
            let spec = GaussianSpec::new(m, -m, rho)?;
            let c = price_check(&nl, &spec, r1, r2, 1e-4, &cfg)?;
            println!("{:>10} rho={rho:>4}  lhs={:.8}  rhs={:.8}  residual={:.1e}", nl.name, c.lhs, c.rhs, c.residual);
        }
    }
    Ok(())
}
