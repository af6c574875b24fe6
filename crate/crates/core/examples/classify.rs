//! Number-theoretic building blocks: p-adic split, quadratic character and
//! the resulting class of every element of `Z_{p^n}`, checked against
//! classes built from a primitive root.
//!
//! cargo run --example classify -- 7 2

use fhs_core::cyclotomy::{class_table, class_table_by_primitive_root, classify, FhsParams};
use fhs_core::numtheory::{p_adic_decompose, primitive_root_mod_p_squared, quadratic_character};

fn main() -> fhs_core::Result<()> {
    let mut args = std::env::args().skip(1);
    let p = args.next().map_or(Ok(5), |a| a.parse()).expect("p must be an integer");
    let n = args.next().map_or(Ok(2), |a| a.parse()).expect("n must be an integer");
    let params = FhsParams::new(p, n)?;
    let g = primitive_root_mod_p_squared(p)?;
    println!("{params}, primitive root mod p^2: {g}");
    println!("{:>6} {:>4} {:>6} {:>4} {:>6}", "t", "val", "unit", "chi", "class");
    for t in 0..params.nu().min(30) {
        let c = classify(t, &params)?;
        if t == 0 {
            println!("{t:>6} {:>4} {:>6} {:>4} {:>6}", "-", "-", "-", c.index());
            continue;
        }
        let d = p_adic_decompose(t, p)?;
        let chi = quadratic_character(d.unit, p)?;
        println!("{t:>6} {:>4} {:>6} {:>4} {:>6}", d.valuation, d.unit, chi.value(), c.index());
    }
    let agree = class_table(&params) == class_table_by_primitive_root(&params);
    println!("character classes equal primitive-root classes on all {} elements: {agree}", params.nu());
    Ok(())
}
