//! Order-2 cyclotomic numbers modulo `p^k`: the textbook formula, the
//! formula the library uses, and a direct count.
//!
//! cargo run --example cyclotomic_numbers

use fhs_core::cyclotomy::{
    cyclotomic_number_bruteforce, cyclotomic_number_closed, cyclotomic_number_printed, Parity,
};

fn main() -> fhs_core::Result<()> {
    println!("{:>3} {:>2} {:>5} {:>10} {:>8} {:>6}", "p", "k", "(i,j)", "textbook", "closed", "count");
    for p in [3u64, 5, 7, 11, 13] {
        for k in 1..=3 {
            for i in Parity::BOTH {
                for j in Parity::BOTH {
                    let textbook = cyclotomic_number_printed(i, j, p, k)?;
                    let closed = cyclotomic_number_closed(i, j, p, k)?;
                    let count = cyclotomic_number_bruteforce(i, j, p, k)?;
                    let flag = if closed == count { "" } else { "  MISMATCH" };
                    let note = if textbook.is_integer() && textbook.to_integer() == count as i128 { "" } else { "  *" };
                    println!(
                        "{p:>3} {k:>2} ({},{}) {:>10} {closed:>8} {count:>6}{note}{flag}",
                        i.index(),
                        j.index(),
                        textbook.to_string()
                    );
                }
            }
        }
    }
    println!("* textbook (0,1) for p = 3 mod 4 uses p-1 where the count needs p+1");
    Ok(())
}
