//! Low-lying zeros of L(s, χ) for a few primitive characters.
//!
//! $ cargo run --example l_zeros

use zetalab::dirichlet::{character, scan_l_zeros, ScanFormula};
use zetalab::numerics::QuadratureConfig;

fn main() -> zetalab::Result<()> {
    let cfg = QuadratureConfig::default();
    for (q, label) in [(3, 1), (4, 1), (5, 2)] {
        let chi = character(q, label)?;
        let zeros = scan_l_zeros(&chi, 0.5, 20.0, 0.05, 1e-12, ScanFormula::Reference, &cfg)?;
        let shown: Vec<String> = zeros.iter().map(|w| format!("{w:.9}")).collect();
        println!("q={q} label={label}: {}", shown.join("  "));
    }
    Ok(())
}
