//! Run every acceptance criterion and print one line each.
//!
//! $ cargo run --release --example verify_all

use zetalab::verify::{run_all, VerifyOptions};

fn main() -> zetalab::Result<()> {
    let reports = run_all(&VerifyOptions::default())?;
    for r in &reports {
        println!("{}", r.line());
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("{} of {} passed", reports.len() - failed, reports.len());
    if failed > 0 {
        std::process::exit(1);
    }
    Ok(())
}
