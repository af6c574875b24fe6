//! Exact modular arithmetic on machine integers.
//!
//! Everything here works on `u64` with `u128` widening for products, so no
//! intermediate result can overflow for moduli below 2^64.

use crate::error::{invalid, Result};

/// `t = p^valuation * unit` with `p` not dividing `unit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PAdicDecomposition {
    pub valuation: u32,
    pub unit: u64,
}

/// Value of the Legendre symbol of a unit modulo an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadraticCharacter {
    Residue,
    NonResidue,
}

impl QuadraticCharacter {
    pub fn value(self) -> i8 {
        match self {
            QuadraticCharacter::Residue => 1,
            QuadraticCharacter::NonResidue => -1,
        }
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_unchecked(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, modulus);
        }
        b = mul_mod(b, b, modulus);
        exp >>= 1;
    }
    acc
}

/// `base^exp mod modulus`.
pub fn pow_mod(base: u64, exp: u64, modulus: u64) -> Result<u64> {
    if modulus < 2 {
        return Err(invalid(format!("modulus {modulus} must be at least 2")));
    }
    Ok(pow_mod_unchecked(base, exp, modulus))
}

/// Deterministic primality test for the whole `u64` range, excluding 2.
pub fn is_odd_prime(x: u64) -> bool {
    if x < 3 || x.is_multiple_of(2) {
        return false;
    }
    for small in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if x == small {
            return true;
        }
        if x.is_multiple_of(small) {
            return false;
        }
    }
    // Miller-Rabin with the first twelve primes as witnesses is exact below 3.3e24.
    let mut d = x - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut y = pow_mod_unchecked(a, d, x);
        if y == 1 || y == x - 1 {
            continue;
        }
        for _ in 1..s {
            y = mul_mod(y, y, x);
            if y == x - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Splits a nonzero `t` into its `p`-power part and the unit cofactor.
pub fn p_adic_decompose(t: u64, p: u64) -> Result<PAdicDecomposition> {
    if t == 0 {
        return Err(invalid("zero has no p-adic decomposition"));
    }
    if p < 2 {
        return Err(invalid(format!("prime {p} must be at least 2")));
    }
    let mut unit = t;
    let mut valuation = 0;
    while unit.is_multiple_of(p) {
        unit /= p;
        valuation += 1;
    }
    Ok(PAdicDecomposition { valuation, unit })
}

/// Legendre symbol of `u` modulo the odd prime `p` by Euler's criterion.
///
/// For odd `p` a unit is a square modulo `p^k` exactly when it is a square
/// modulo `p`, so this also decides membership in the index-2 subgroup of
/// `(Z/p^k)^*`.
pub fn quadratic_character(u: u64, p: u64) -> Result<QuadraticCharacter> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(invalid(format!("modulus {p} must be an odd prime")));
    }
    if u.is_multiple_of(p) {
        return Err(invalid(format!("{u} is not a unit modulo {p}")));
    }
    if pow_mod_unchecked(u, (p - 1) / 2, p) == 1 {
        Ok(QuadraticCharacter::Residue)
    } else {
        Ok(QuadraticCharacter::NonResidue)
    }
}

fn distinct_prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= x {
        if x.is_multiple_of(f) {
            out.push(f);
            while x.is_multiple_of(f) {
                x /= f;
            }
        }
        f += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

/// Multiplicative order of `a` modulo `m`, or `None` if `a` is not a unit.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m < 2 || num_integer::gcd(a % m, m) != 1 {
        return None;
    }
    let mut acc = a % m;
    let mut order = 1;
    while acc != 1 {
        acc = mul_mod(acc, a, m);
        order += 1;
    }
    Some(order)
}

/// Smallest primitive root modulo `p^2`, which is then a primitive root
/// modulo every power of `p`.
pub fn primitive_root_mod_p_squared(p: u64) -> Result<u64> {
    if !is_odd_prime(p) {
        return Err(invalid(format!("{p} is not an odd prime")));
    }
    let modulus = p * p;
    let group_order = p * (p - 1);
    let mut factors = distinct_prime_factors(p - 1);
    factors.push(p);
    (2..modulus)
        .find(|&g| {
            g % p != 0
                && factors
                    .iter()
                    .all(|&q| pow_mod_unchecked(g, group_order / q, modulus) != 1)
        })
        .ok_or_else(|| invalid(format!("no primitive root found modulo {modulus}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn odd_prime_examples() {
        assert!(is_odd_prime(7));
        assert!(!is_odd_prime(9));
        assert!(!is_odd_prime(2));
        assert!(!is_odd_prime(1));
        assert!(is_odd_prime(2_147_483_647));
        assert!(!is_odd_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(is_odd_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn odd_prime_matches_trial_division() {
        let naive = |x: u64| x > 2 && (2..x).take_while(|d| d * d <= x).all(|d| !x.is_multiple_of(d));
        for x in 1..5000 {
            assert_eq!(is_odd_prime(x), naive(x), "x = {x}");
        }
    }

    #[test]
    fn pow_mod_examples() {
        assert_eq!(pow_mod(2, 3, 5).unwrap(), 3);
        assert_eq!(pow_mod(3, 0, 7).unwrap(), 1);
        assert_eq!(pow_mod(5, 3, 9).unwrap(), 8);
        assert!(pow_mod(5, 3, 1).is_err());
        assert_eq!(pow_mod(u64::MAX - 1, 2, u64::MAX).unwrap(), 1);
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(
            p_adic_decompose(18, 3).unwrap(),
            PAdicDecomposition { valuation: 2, unit: 2 }
        );
        assert_eq!(
            p_adic_decompose(7, 3).unwrap(),
            PAdicDecomposition { valuation: 0, unit: 7 }
        );
        assert!(p_adic_decompose(0, 3).is_err());
    }

    #[test]
    fn character_examples() {
        assert_eq!(quadratic_character(1, 11).unwrap().value(), 1);
        assert_eq!(quadratic_character(4, 7).unwrap(), QuadraticCharacter::Residue);
        assert_eq!(quadratic_character(2, 3).unwrap(), QuadraticCharacter::NonResidue);
        assert!(quadratic_character(14, 7).is_err());
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(primitive_root_mod_p_squared(3).unwrap(), 2);
        assert_eq!(primitive_root_mod_p_squared(5).unwrap(), 2);
        assert_eq!(primitive_root_mod_p_squared(7).unwrap(), 3);
        for p in [3u64, 5, 7, 11, 13, 29, 31, 37, 101] {
            let g = primitive_root_mod_p_squared(p).unwrap();
            assert_eq!(multiplicative_order(g, p * p), Some(p * (p - 1)));
            let smaller = (2..g).find(|&h| multiplicative_order(h, p * p) == Some(p * (p - 1)));
            assert_eq!(smaller, None);
        }
        assert!(primitive_root_mod_p_squared(9).is_err());
    }

    // Legendre symbol via Euler's criterion against the even powers of a
    // primitive root, on every unit of every prime power up to 10^4.
    #[test]
    fn character_matches_subgroup_enumeration() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            let g = primitive_root_mod_p_squared(p).unwrap();
            let mut modulus = p;
            while modulus <= 10_000 {
                let phi = modulus / p * (p - 1);
                let mut squares = vec![false; modulus as usize];
                let mut x = 1;
                for s in 0..phi {
                    if s % 2 == 0 {
                        squares[x as usize] = true;
                    }
                    x = x * g % modulus;
                }
                for u in (1..modulus).filter(|u| u % p != 0) {
                    let ch = quadratic_character(u, p).unwrap();
                    assert_eq!(ch == QuadraticCharacter::Residue, squares[u as usize]);
                }
                modulus *= p;
            }
        }
    }

    proptest! {
        #[test]
        fn euler_totient_exponent_kills_units(p_idx in 0usize..10, a in 1u64..100_000) {
            let p = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31][p_idx];
            prop_assume!(a % p != 0);
            prop_assert_eq!(pow_mod(a, p * (p - 1), p * p).unwrap(), 1);
        }

        #[test]
        fn decomposition_round_trips(p_idx in 0usize..5, t in 1u64..1_000_000) {
            let p = [3u64, 5, 7, 11, 13][p_idx];
            let d = p_adic_decompose(t, p).unwrap();
            prop_assert_ne!(d.unit % p, 0);
            prop_assert_eq!(p.pow(d.valuation) * d.unit, t);
        }
    }
}
