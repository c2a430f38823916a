//! Dirichlet characters modulo q with parity, conductor and Gauss sums.
//!
//! $ cargo run --example characters -- 12

use zetalab::dirichlet::{enumerate_characters, gauss_sum, root_number};

fn main() -> zetalab::Result<()> {
    let q: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    for chi in enumerate_characters(q)? {
        let values: Vec<String> = chi
            .values
            .iter()
            .map(|v| format!("{:+.3}{:+.3}i", v.re, v.im))
            .collect();
        print!(
            "#{} order {} {:?} conductor {} ",
            chi.label,
            chi.order(),
            chi.parity,
            chi.conductor
        );
        if chi.primitive {
            println!("G={:.4} eps={:.4}", gauss_sum(&chi), root_number(&chi));
        } else {
            println!("imprimitive");
        }
        println!("  [{}]", values.join(", "));
    }
    Ok(())
}
