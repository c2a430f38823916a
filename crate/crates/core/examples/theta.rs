//! Theta sums Ψ and Ψ_χ with truncation bounds and the functional equation.
//!
//! $ cargo run --example theta

use zetalab::dirichlet::character;
use zetalab::theta::{psi, psi_chi, psi_functional_residual};

fn main() -> zetalab::Result<()> {
    let chi = character(4, 1)?;
    for y in [0.01, 0.1, 1.0, 3.0, 50.0] {
        let p = psi(y, 1e-16)?;
        let pc = psi_chi(y, &chi, 1e-16)?;
        println!(
            "y={y:>5}  psi={:.15e} ({} terms, bound {:.0e})  psi_chi4={:.15e}  identity residual {:.1e}",
            p.value.re,
            p.terms_used,
            p.truncation_bound,
            pc.value.re,
            psi_functional_residual(y)?
        );
    }
    Ok(())
}
