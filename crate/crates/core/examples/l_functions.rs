//! Completed L-functions: theta continuation, reference product and generator interpolation.
//!
//! $ cargo run --example l_functions

use zetalab::dirichlet::{character, l_interpolation, l_oracle, phi_paper, phi_reference};
use zetalab::numerics::QuadratureConfig;
use zetalab::Complex64;

fn main() -> zetalab::Result<()> {
    let cfg = QuadratureConfig::default();
    let s = Complex64::new(0.3, 4.0);
    for (q, label) in [(4, 1), (5, 1), (5, 2), (7, 3)] {
        let chi = character(q, label)?;
        let cont = phi_paper(s, &chi, &cfg)?;
        let interp = l_interpolation(s, &chi, &cfg)?;
        println!("chi_{q}#{label} ({:?})", chi.parity);
        println!("  L(s)        = {:.10}", l_oracle(s, &chi)?);
        println!("  phi(s)      = {:.10}", phi_reference(s, &chi)?);
        println!("  theta form  residual {:.1e}", cont.residual_vs_reference.unwrap_or(f64::NAN));
        println!(
            "  generator   residual {:.1e} (as printed: {:.1e})",
            interp.corrected_residual, interp.paper_residual
        );
    }
    Ok(())
}
