//! Build the family for `p^n` and show each sequence with its symbol counts.
//!
//! cargo run --example generate_family -- 7 2

use fhs_core::cyclotomy::FhsParams;
use fhs_core::fhs::{build_family, frequency_counts, is_uniformly_distributed};

fn main() -> fhs_core::Result<()> {
    let mut args = std::env::args().skip(1);
    let p = args.next().map_or(Ok(3), |a| a.parse()).expect("p must be an integer");
    let n = args.next().map_or(Ok(2), |a| a.parse()).expect("n must be an integer");
    let params = FhsParams::new(p, n)?;
    let family = build_family(&params);
    println!("{params}: {} sequences of length {} over {} symbols", family.len(), params.nu(), params.alphabet_size());
    for x in family.sequences() {
        let shown: Vec<String> = x.symbols().iter().take(40).map(u32::to_string).collect();
        let more = if x.len() > 40 { " ..." } else { "" };
        println!("X_{}: {}{more}", x.index(), shown.join(" "));
        println!("     counts {:?}", frequency_counts(x));
    }
    let u = is_uniformly_distributed(&family);
    println!("family totals {:?} -> uniform = {}", u.totals, u.uniform);
    Ok(())
}
