//! ρ-derivative of the four-shift expectation of |x1 − x2| against its closed form.
//!
//! $ cargo run --release --example lemma2

use zetalab::gaussian::{expectation_group, group_rho_derivative, lemma2_rhs, SignedSpecGroup};
use zetalab::numerics::QuadratureConfig;
use zetalab::Complex64;

fn main() -> zetalab::Result<()> {
    let cfg = QuadratureConfig::default();
    let f = |a: f64, b: f64| (a - b).abs();
    for alpha in [0.0, 0.5, 1.5] {
        for rho in [-0.4, 0.2, 0.7] {
            let a = Complex64::new(alpha, 0.0);
            let group = SignedSpecGroup::four_shift(a, rho)?;
            let value = expectation_group(f, &group, &cfg)?.value;
            let fd = group_rho_derivative(f, &group, 1e-4, &cfg)?;
            let closed = lemma2_rhs(a, rho)?;
            println!(
                "alpha={alpha} rho={rho:>4}  E={:.6}  dE/drho={:.8}  closed={:.8}  diff={:.1e}",
                value.re,
                fd.re,
                closed.re,
                (fd - closed).norm()
            );
        }
    }
    Ok(())
}
