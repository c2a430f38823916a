//! Completed zeta φ(s) from the theta integral, checked against π^{−s/2}Γ(s/2)ζ(s).
//!
//! $ cargo run --example completed_zeta

use zetalab::numerics::QuadratureConfig;
use zetalab::zeta::{phi_oracle_with_error, phi_product, xi};
use zetalab::Complex64;

fn main() -> zetalab::Result<()> {
    let cfg = QuadratureConfig::default();
    println!("{:>6} {:>6}  {:>24}  {:>10}  {:>10}", "Re s", "Im s", "phi", "residual", "quad err");
    for (re, im) in [(0.5, 0.0), (0.3, 2.0), (0.5, 10.0), (0.8, 25.0), (2.0, 0.0)] {
        let s = Complex64::new(re, im);
        let (phi, err) = phi_oracle_with_error(s, &cfg)?;
        let residual = (phi - phi_product(s)?).norm();
        println!("{re:>6} {im:>6}  {phi:>24.12e}  {residual:>10.2e}  {err:>10.2e}");
    }
    // φ(2) = π/6
    let two = phi_oracle_with_error(Complex64::new(2.0, 0.0), &cfg)?.0;
    println!("phi(2) - pi/6 = {:.2e}", (two.re - std::f64::consts::PI / 6.0).abs());
    println!("xi(1/2) = {:.15}", xi(Complex64::new(0.5, 0.0), &cfg)?.re);
    Ok(())
}
