//! Exact-rational boundedness conditions on a grid and the numerically fitted envelope rates.
//!
//! $ cargo run --release --example boundedness

use zetalab::dynamics::{boundedness_report, exact_grid_check, Branch, CenteredPoint};

fn main() -> zetalab::Result<()> {
    for branch in [Branch::Riemann, Branch::DirichletOdd] {
        let g = exact_grid_check(10, branch)?;
        println!(
            "{branch:?}: {} grid points, {} iff violations, {} exceptional",
            g.points,
            g.iff_violations.len(),
            g.exceptional.len()
        );
    }
    let grid: Vec<CenteredPoint> = [(0.0, 2.0), (0.2, 2.0), (-0.2, 5.0), (0.3, 0.4)]
        .iter()
        .map(|&(s, w)| CenteredPoint::new(s, w))
        .collect::<zetalab::Result<_>>()?;
    for r in boundedness_report(&grid, Branch::Riemann, 4, 30.0)? {
        println!(
            "sigma={:>5} omega={:>4}  rate={:>9.5}  bounded={}  joint={}",
            r.sigma, r.omega, r.rate, r.bounded, r.joint_condition
        );
    }
    Ok(())
}
