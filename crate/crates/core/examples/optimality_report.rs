//! Lempel-Greenberg, Peng-Fan and average-Hamming-correlation verdicts for
//! one instance, then the same after changing a single symbol.
//!
//! cargo run --example optimality_report -- 3 2

use fhs_core::bounds::{optimality_report, optimality_report_for, OptimalityReport};
use fhs_core::cyclotomy::FhsParams;
use fhs_core::fhs::build_family;

fn show(label: &str, r: &OptimalityReport) {
    println!("{label}");
    println!("  Lempel-Greenberg bound {} attained by {:?}", r.lempel_greenberg.bound.bound, r.lempel_greenberg.attained);
    println!("  Peng-Fan bounds {:?}, H(S) = {}, optimal = {}", r.peng_fan.bounds, r.peng_fan.h_s, r.peng_fan.optimal);
    println!(
        "  N_a = {}, N_c = {}, A_a = {}, A_c = {}",
        r.averages.n_a, r.averages.n_c, r.averages.a_a, r.averages.a_c
    );
    println!("  AH: {} vs {} -> equality = {}, uniform = {}", r.ah.lhs, r.ah.rhs, r.ah.equality, r.uniform);
}

fn main() -> fhs_core::Result<()> {
    let mut args = std::env::args().skip(1);
    let p = args.next().map_or(Ok(3), |a| a.parse()).expect("p must be an integer");
    let n = args.next().map_or(Ok(2), |a| a.parse()).expect("n must be an integer");
    let params = FhsParams::new(p, n)?;
    show(&format!("{params}"), &optimality_report(&params)?);

    let family = build_family(&params);
    let old = family.sequences()[0].symbols()[1];
    let new = (old + 1) % params.alphabet_size() as u32;
    let perturbed = family.with_symbol(0, 1, new)?;
    show(&format!("{params} with X_0(1) changed {old} -> {new}"), &optimality_report_for(&perturbed)?);
    Ok(())
}
