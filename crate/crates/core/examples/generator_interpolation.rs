//! The regularized generator z(s) on the strip and the interpolation back to φ.
//!
//! $ cargo run --example generator_interpolation

use zetalab::numerics::QuadratureConfig;
use zetalab::zeta::{generator_z, interpolate_phi_with_error, phi_oracle, StripPoint};

fn main() -> zetalab::Result<()> {
    let cfg = QuadratureConfig::default();
    for (sigma, omega) in [(0.2, 5.0), (-0.3, 1.0), (0.0, 14.134725), (0.45, 30.0)] {
        let p = StripPoint::new(sigma, omega)?;
        let z = generator_z(p.s(), &cfg)?;
        let z_mirror = generator_z(p.mirror().s(), &cfg)?;
        let (interp, err) = interpolate_phi_with_error(p.s(), &cfg)?;
        let residual = (interp - phi_oracle(p.s(), &cfg)?).norm();
        println!(
            "sigma={sigma:>5} omega={omega:>9}  z={:.6}  z(mirror)={:.6}  residual={residual:.1e} (est {err:.1e})",
            z.value, z_mirror.value
        );
    }
    Ok(())
}
