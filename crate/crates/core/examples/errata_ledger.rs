//! Collect the formula corrections that brute force supports for a few
//! instances and print them as JSON lines.
//!
//! cargo run --example errata_ledger

use fhs_core::bounds::average_correlations;
use fhs_core::correlation::{compare_closed_forms, TableSet};
use fhs_core::cyclotomy::FhsParams;
use fhs_core::errata::{collect_errata, ALL};
use fhs_core::fhs::build_family;

fn main() -> fhs_core::Result<()> {
    println!("known corrections:");
    for e in ALL {
        println!("  {}: {}  =>  {}", e.location, e.printed, e.corrected);
    }
    println!();
    for (p, n) in [(3, 2), (3, 5), (5, 2)] {
        let params = FhsParams::new(p, n)?;
        let family = build_family(&params);
        let averages = average_correlations(&family, &TableSet::compute(&family)?)?;
        for entry in collect_errata(&params, &compare_closed_forms(&params)?, &averages)? {
            println!("{}", entry.to_json_line());
        }
    }
    Ok(())
}
