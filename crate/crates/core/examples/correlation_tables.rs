//! Hamming correlation of two family members, by brute force and from the
//! closed forms, side by side.
//!
//! cargo run --example correlation_tables -- 3 3 0 1

use fhs_core::correlation::{autocorrelation_closed, correlation_table, crosscorrelation_closed};
use fhs_core::cyclotomy::FhsParams;
use fhs_core::fhs::build_family;

fn main() -> fhs_core::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer arguments")).collect();
    let get = |k: usize, default: u64| args.get(k).copied().unwrap_or(default);
    let params = FhsParams::new(get(0, 3), get(1, 2) as u32)?;
    let (i, j) = (get(2, 0) as usize, get(3, 1) as usize);
    let family = build_family(&params);
    let table = correlation_table(&family, i, j)?;
    let size = params.family_size();
    let delta = (j + size - i % size) % size;
    println!("H(X_{i}, X_{j} : tau) for {params}, delta = {delta}");
    println!("{:>6} {:>6} {:>6}  rule", "tau", "brute", "closed");
    for (tau, &brute) in table.values.iter().enumerate() {
        let tau = tau as u64;
        let verdict = if delta == 0 {
            if tau == 0 {
                None
            } else {
                Some(autocorrelation_closed(&params, tau)?)
            }
        } else {
            Some(crosscorrelation_closed(&params, delta, tau)?)
        };
        let (closed, rule) = match &verdict {
            Some(v) if v.covered => (v.value.map_or("-".into(), |x| x.to_string()), v.rule.map(|r| r.to_string())),
            _ => ("-".into(), None),
        };
        println!("{tau:>6} {brute:>6} {closed:>6}  {}", rule.unwrap_or_default());
    }
    let peak = table.values.iter().skip(usize::from(delta == 0)).max().copied().unwrap_or(0);
    println!("peak {peak}, total {}", table.values.iter().sum::<u64>());
    Ok(())
}
