//! Run the full per-instance check battery that `fhs verify` uses.
//!
//! cargo run --example verify_sweep

use fhs_core::cli::verify::verify_instance;
use fhs_core::cyclotomy::FhsParams;

fn main() -> fhs_core::Result<()> {
    for (p, n) in [(3, 2), (3, 3), (5, 2), (7, 3), (13, 2)] {
        let report = verify_instance(&FhsParams::new(p, n)?)?;
        println!("p={p} n={n}: {} failed", report.failed());
        for c in &report.checks {
            let status = match c.passed {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "skip",
            };
            println!("  {:<22} {status:<5} {}", c.check, c.detail);
        }
    }
    Ok(())
}
