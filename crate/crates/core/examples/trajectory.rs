//! Forward and mirror trajectories zN_t and their ratio over t.
//!
//! $ cargo run --example trajectory -- 0.1 3.0

use zetalab::dynamics::{ratio_trajectory, Branch, CenteredPoint};

fn main() -> zetalab::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().ok());
    let sigma = args.next().flatten().unwrap_or(0.1);
    let omega = args.next().flatten().unwrap_or(3.0);
    let p = CenteredPoint::new(sigma, omega)?;
    let grid: Vec<f64> = (0..=12).map(|k| k as f64).collect();
    println!("{:>4} {:>12} {:>14} {:>14} {:>12}", "t", "rho", "|zN fwd|", "|zN mirror|", "ratio");
    for s in ratio_trajectory(&p, Branch::Riemann, 8, &grid)? {
        println!(
            "{:>4} {:>12.9} {:>14.6e} {:>14.6e} {:>12.6}{}",
            s.t,
            s.rho,
            s.zn_forward.norm(),
            s.zn_mirror.norm(),
            s.ratio,
            if s.flagged { "  *" } else { "" }
        );
    }
    Ok(())
}
