//! Order-2 generalized cyclotomic classes modulo `p^n`.
//!
//! `Z_{p^n}` splits into `2n` classes. A nonzero `t = p^e u` sits at level
//! `k = n - e`; its parity is 0 when `u` is a square modulo `p` and 1
//! otherwise. Class `2(k-1) + parity` collects all elements with that level
//! and parity, and zero is folded into class 0.

use std::fmt;

use num_rational::Ratio;

use crate::error::{invalid, Error, Result};
use crate::numtheory::{
    is_odd_prime, p_adic_decompose, primitive_root_mod_p_squared, quadratic_character,
    QuadraticCharacter,
};

/// Sequence lengths must stay strictly below this.
pub const MAX_LENGTH: u64 = 1 << 31;

/// An instance of the construction: odd prime `p` and exponent `n >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FhsParams {
    p: u64,
    n: u32,
    nu: u64,
}

impl FhsParams {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::NotOddPrime { p });
        }
        if n < 2 {
            return Err(Error::ExponentTooSmall { n });
        }
        let nu = p
            .checked_pow(n)
            .filter(|&nu| nu < MAX_LENGTH)
            .ok_or(Error::LengthTooLarge { p, n })?;
        Ok(FhsParams { p, n, nu })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Sequence length `p^n`.
    pub fn nu(&self) -> u64 {
        self.nu
    }

    /// Number of frequencies, `2n`.
    pub fn alphabet_size(&self) -> usize {
        2 * self.n as usize
    }

    /// Number of sequences in the family, `2n`.
    pub fn family_size(&self) -> usize {
        2 * self.n as usize
    }

    /// `p^k` for `0 <= k <= n`.
    pub fn pow(&self, k: u32) -> u64 {
        self.p.pow(k)
    }

    pub fn is_one_mod_four(&self) -> bool {
        self.p % 4 == 1
    }
}

impl fmt::Display for FhsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} n={}", self.p, self.n)
    }
}

/// Coset index within the units modulo `p^k`: 0 for squares, 1 otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Zero,
    One,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Zero, Parity::One];

    pub fn index(self) -> usize {
        match self {
            Parity::Zero => 0,
            Parity::One => 1,
        }
    }

    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            0 => Ok(Parity::Zero),
            1 => Ok(Parity::One),
            _ => Err(invalid(format!("parity {i} is not 0 or 1"))),
        }
    }

    pub fn other(self) -> Self {
        match self {
            Parity::Zero => Parity::One,
            Parity::One => Parity::Zero,
        }
    }

    fn of_unit(u: u64, p: u64) -> Self {
        match quadratic_character(u % p, p) {
            Ok(QuadraticCharacter::Residue) => Parity::Zero,
            _ => Parity::One,
        }
    }
}

/// One of the classes `C_0 .. C_{2n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassId {
    level: u32,
    parity: Parity,
    zero: bool,
}

impl ClassId {
    /// The class holding the level-`level` elements of the given parity.
    pub fn new(level: u32, parity: Parity, params: &FhsParams) -> Result<Self> {
        if level == 0 || level > params.n() {
            return Err(invalid(format!("level {level} outside 1..={}", params.n())));
        }
        Ok(ClassId { level, parity, zero: false })
    }

    pub fn from_index(index: usize, params: &FhsParams) -> Result<Self> {
        if index >= params.alphabet_size() {
            return Err(invalid(format!("class index {index} outside 0..{}", params.alphabet_size())));
        }
        ClassId::new(index as u32 / 2 + 1, Parity::from_index(index % 2)?, params)
    }

    pub fn index(&self) -> usize {
        2 * (self.level as usize - 1) + self.parity.index()
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// True only for the element 0, which lives in `C_0` without a level of its own.
    pub fn is_zero(&self) -> bool {
        self.zero
    }
}

/// Class of `t` in `Z_{p^n}`.
pub fn classify(t: u64, params: &FhsParams) -> Result<ClassId> {
    if t >= params.nu() {
        return Err(invalid(format!("residue {t} outside 0..{}", params.nu())));
    }
    if t == 0 {
        return Ok(ClassId { level: 1, parity: Parity::Zero, zero: true });
    }
    let d = p_adic_decompose(t, params.p())?;
    Ok(ClassId {
        level: params.n() - d.valuation,
        parity: Parity::of_unit(d.unit, params.p()),
        zero: false,
    })
}

/// Class index of every element of `Z_{p^n}`, in order.
pub fn class_table(params: &FhsParams) -> Vec<u8> {
    (0..params.nu())
        .map(|t| classify(t, params).expect("t < nu").index() as u8)
        .collect()
}

/// Class table rebuilt from powers of a primitive root modulo `p^2`: the
/// element `p^{n-k} g^s mod p^n` is placed in class `2(k-1) + (s mod 2)`.
/// Shares no code with [`classify`]; used as its oracle.
pub fn class_table_by_primitive_root(params: &FhsParams) -> Vec<u8> {
    let p = params.p();
    let n = params.n();
    let g = primitive_root_mod_p_squared(p).expect("params hold an odd prime");
    let mut table = vec![u8::MAX; params.nu() as usize];
    table[0] = 0;
    for k in 1..=n {
        let modulus = params.pow(k);
        let scale = params.pow(n - k);
        let phi = modulus / p * (p - 1);
        let mut x = 1u64;
        for s in 0..phi {
            table[(scale * x) as usize] = (2 * (k - 1) + (s % 2) as u32) as u8;
            x = x * g % modulus;
        }
    }
    table
}

/// Members of class `c`, ascending, by a full scan of `Z_{p^n}`.
pub fn class_members(c: ClassId, params: &FhsParams) -> Vec<u64> {
    (0..params.nu())
        .filter(|&t| classify(t, params).expect("t < nu").index() == c.index())
        .collect()
}

/// Elements of the level-`level` block of parity `parity`, i.e.
/// `p^{n-level}` times the units modulo `p^level` in that coset.
pub fn level_members(level: u32, parity: Parity, params: &FhsParams) -> Result<Vec<u64>> {
    ClassId::new(level, parity, params)?;
    let p = params.p();
    let scale = params.pow(params.n() - level);
    Ok((1..params.pow(level))
        .filter(|u| u % p != 0 && Parity::of_unit(*u, p) == parity)
        .map(|u| u * scale)
        .collect())
}

/// `(p^k - p^{k-1}) / 2`, the size of each level-`k` block.
pub fn level_block_size(p: u64, k: u32) -> u64 {
    (p.pow(k) - p.pow(k - 1)) / 2
}

fn check_cyclotomic_args(p: u64, k: u32) -> Result<u64> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime { p });
    }
    if k == 0 {
        return Err(invalid("level k must be at least 1"));
    }
    p.checked_pow(k)
        .filter(|&m| m < MAX_LENGTH)
        .ok_or_else(|| invalid(format!("{p}^{k} exceeds the 2^31 cap")))
}

/// `(i, j)_{p^k}`: units `x` of parity `i` modulo `p^k` whose successor
/// `x + 1` is a unit of parity `j`, counted exhaustively.
pub fn cyclotomic_number_bruteforce(i: Parity, j: Parity, p: u64, k: u32) -> Result<u64> {
    let modulus = check_cyclotomic_args(p, k)?;
    Ok((1..modulus)
        .filter(|&x| {
            let y = (x + 1) % modulus;
            x % p != 0 && y % p != 0 && Parity::of_unit(x, p) == i && Parity::of_unit(y, p) == j
        })
        .count() as u64)
}

/// Closed form for `(i, j)_{p^k}`.
///
/// For `p = 3 mod 4` the `(0,1)` entry is `p^{k-1}(p+1)/4`; see
/// [`crate::errata::CYCLOTOMIC_01`].
pub fn cyclotomic_number_closed(i: Parity, j: Parity, p: u64, k: u32) -> Result<u64> {
    check_cyclotomic_args(p, k)?;
    let base = p.pow(k - 1);
    let value = match (p % 4, i, j) {
        (1, Parity::Zero, Parity::Zero) => base * (p - 5) / 4,
        (1, _, _) => base * (p - 1) / 4,
        (_, Parity::Zero, Parity::One) => base * (p + 1) / 4,
        _ => base * (p - 3) / 4,
    };
    Ok(value)
}

/// The cyclotomic-number formulas exactly as tabulated in the source, which
/// are not integral for the `(0,1)` entry when `p = 3 mod 4` and `k = 1`.
pub fn cyclotomic_number_printed(i: Parity, j: Parity, p: u64, k: u32) -> Result<Ratio<i128>> {
    check_cyclotomic_args(p, k)?;
    let base = p.pow(k - 1) as i128;
    let p = p as i128;
    let numerator = match (p % 4, i, j) {
        (1, Parity::Zero, Parity::Zero) => base * (p - 5),
        (1, _, _) => base * (p - 1),
        (_, Parity::Zero, Parity::One) => base * (p - 1),
        _ => base * (p - 3),
    };
    Ok(Ratio::new(numerator, 4))
}

/// Which evaluation route a distance function takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Closed,
    Brute,
}

fn check_tau(tau: u64, params: &FhsParams) -> Result<()> {
    if tau >= params.nu() {
        return Err(invalid(format!("shift {tau} outside 0..{}", params.nu())));
    }
    Ok(())
}

/// `|{0} ∩ (D_i^{(k)} + tau)|`: 1 exactly when `-tau` lies in the block.
pub fn delta_star(i: Parity, k: u32, tau: u64, params: &FhsParams, mode: Mode) -> Result<u64> {
    check_tau(tau, params)?;
    ClassId::new(k, i, params)?;
    match mode {
        Mode::Brute => {
            let nu = params.nu();
            let hits = level_members(k, i, params)?
                .into_iter()
                .filter(|x| (x + tau).is_multiple_of(nu))
                .count();
            Ok(hits as u64)
        }
        Mode::Closed => {
            let c = classify(tau, params)?;
            if c.is_zero() || c.level() != k {
                return Ok(0);
            }
            // -1 is a square modulo p exactly when p = 1 mod 4.
            let same = c.parity() == i;
            Ok(u64::from(same == params.is_one_mod_four()))
        }
    }
}

/// `|D_i^{(l)} ∩ (D_j^{(k)} + tau)|`.
pub fn delta_lk(
    i: Parity,
    j: Parity,
    l: u32,
    k: u32,
    tau: u64,
    params: &FhsParams,
    mode: Mode,
) -> Result<u64> {
    check_tau(tau, params)?;
    ClassId::new(l, i, params)?;
    ClassId::new(k, j, params)?;
    match mode {
        Mode::Brute => {
            let nu = params.nu();
            let target = ClassId::new(l, i, params)?.index();
            let mut hits = 0;
            for x in level_members(k, j, params)? {
                let y = (x + tau) % nu;
                if y != 0 && classify(y, params)?.index() == target {
                    hits += 1;
                }
            }
            Ok(hits)
        }
        Mode::Closed => delta_lk_closed(i, j, l, k, tau, params),
    }
}

fn delta_lk_closed(i: Parity, j: Parity, l: u32, k: u32, tau: u64, params: &FhsParams) -> Result<u64> {
    let p = params.p();
    let c = classify(tau, params)?;
    if c.is_zero() {
        // Zero shift: the sets only meet on the diagonal; see errata::DELTA_DIAGONAL_AT_ZERO.
        return Ok(if l == k && i == j { level_block_size(p, k) } else { 0 });
    }
    let (level, parity) = (c.level(), c.parity());
    let value = if l < k {
        // Depends on j only; the block of tau flips with -1 being a non-square.
        let wanted = if params.is_one_mod_four() { j } else { j.other() };
        if level == k && parity == wanted {
            level_block_size(p, l)
        } else {
            0
        }
    } else if l > k {
        if level == l && parity == i {
            level_block_size(p, k)
        } else {
            0
        }
    } else if level < k {
        if i == j {
            level_block_size(p, k)
        } else {
            0
        }
    } else if level > k {
        0
    } else {
        let (a, b) = match (i, j) {
            (Parity::Zero, Parity::Zero) if parity == Parity::Zero => (Parity::Zero, Parity::Zero),
            (Parity::Zero, Parity::Zero) => (Parity::One, Parity::One),
            (Parity::One, Parity::One) if parity == Parity::One => (Parity::Zero, Parity::Zero),
            (Parity::One, Parity::One) => (Parity::One, Parity::One),
            (Parity::One, Parity::Zero) if parity == Parity::Zero => (Parity::Zero, Parity::One),
            (Parity::One, Parity::Zero) => (Parity::One, Parity::Zero),
            (Parity::Zero, Parity::One) if parity == Parity::Zero => (Parity::One, Parity::Zero),
            (Parity::Zero, Parity::One) => (Parity::Zero, Parity::One),
        };
        cyclotomic_number_closed(a, b, p, k)?
    };
    Ok(value)
}

/// Every `Δ` value for one shift, counted in a single pass over `Z_{p^n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaProfile {
    n: usize,
    star: Vec<u64>,
    pairs: Vec<u64>,
}

impl DeltaProfile {
    /// Brute-force profile from a precomputed [`class_table`].
    pub fn brute(tau: u64, params: &FhsParams, table: &[u8]) -> Result<Self> {
        check_tau(tau, params)?;
        let nu = params.nu();
        let m = params.alphabet_size();
        let mut star = vec![0; m];
        let mut pairs = vec![0; m * m];
        for x in 1..nu {
            let y = (x + tau) % nu;
            let from = table[x as usize] as usize;
            if y == 0 {
                star[from] += 1;
            } else {
                pairs[table[y as usize] as usize * m + from] += 1;
            }
        }
        Ok(DeltaProfile { n: params.n() as usize, star, pairs })
    }

    /// `Δ_{*,k}(i:tau)`.
    pub fn star(&self, i: Parity, k: u32) -> u64 {
        self.star[2 * (k as usize - 1) + i.index()]
    }

    /// `Δ_{l,k}(i,j:tau)`.
    pub fn pair(&self, i: Parity, j: Parity, l: u32, k: u32) -> u64 {
        let m = 2 * self.n;
        let row = 2 * (l as usize - 1) + i.index();
        let col = 2 * (k as usize - 1) + j.index();
        self.pairs[row * m + col]
    }
}
