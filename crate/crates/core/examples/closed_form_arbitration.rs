//! Sweep every covered (delta, tau) of several instances and compare the
//! closed forms with brute force. Rules where the textbook expression and the
//! shipped expression differ are listed with the first witness.
//!
//! cargo run --example closed_form_arbitration

use std::collections::BTreeMap;

use fhs_core::correlation::{compare_closed_forms, verify_closed_forms};
use fhs_core::cyclotomy::FhsParams;

fn main() -> fhs_core::Result<()> {
    let grid = [(3, 2), (3, 3), (3, 4), (3, 5), (7, 2), (7, 3), (11, 2), (11, 3), (5, 2), (13, 2)];
    for (p, n) in grid {
        let params = FhsParams::new(p, n)?;
        let comparisons = compare_closed_forms(&params)?;
        let discrepancies = verify_closed_forms(&params)?;
        let mut rules: BTreeMap<String, usize> = BTreeMap::new();
        for c in &comparisons {
            *rules.entry(c.case.rule.to_string()).or_default() += 1;
        }
        println!(
            "{params}: {} comparisons over {} rules, {} discrepancies",
            comparisons.len(),
            rules.len(),
            discrepancies.len()
        );
        let mut seen = Vec::new();
        for c in comparisons.iter().filter(|c| c.case.is_corrected()) {
            if seen.contains(&c.case.rule) {
                continue;
            }
            seen.push(c.case.rule);
            println!(
                "    {} at delta={} tau={}: textbook {} vs count {} (shipped {})",
                c.case.rule, c.delta, c.tau, c.case.printed, c.brute, c.case.shipped
            );
        }
    }
    Ok(())
}
