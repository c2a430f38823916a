//! Monte Carlo concentration of Δx around Re α against the stated bound.
//!
//! $ cargo run --release --example concentration

use zetalab::dynamics::{concentration_check, Branch, CenteredPoint};
use zetalab::numerics::RngSeed;

fn main() -> zetalab::Result<()> {
    let p = CenteredPoint::new(0.0, 14.134725)?;
    let mut stream = 0;
    for t in [2.0, 4.0, 6.0, 8.0] {
        for eps in [0.05, 0.1] {
            let r = concentration_check(t, eps, 4, &p, Branch::Riemann, 50_000, RngSeed::new(20240521, stream))?;
            stream += 1;
            println!(
                "t={t} eps={eps:<4}  empirical={:.4}  exact={:.4}  bound={:>8.4}  {}",
                r.empirical_probability,
                r.exact_probability,
                r.bound,
                if r.satisfied { "ok" } else { "violated" }
            );
        }
    }
    Ok(())
}
