//! Lower bounds on Hamming correlation and the average-correlation
//! optimality check. All comparisons are exact; nothing here touches floats.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::correlation::TableSet;
use crate::cyclotomy::FhsParams;
use crate::error::{invalid, Result};
use crate::fhs::{build_family, is_uniformly_distributed, FhsFamily};

/// Reduced fraction with a positive denominator. Displays as `num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(Ratio<i128>);

impl ExactRational {
    pub fn new(numerator: i128, denominator: i128) -> Result<Self> {
        if denominator == 0 {
            return Err(invalid("zero denominator"));
        }
        Ok(ExactRational(Ratio::new(numerator, denominator)))
    }

    pub fn from_integer(v: i128) -> Self {
        ExactRational(Ratio::from_integer(v))
    }

    pub fn numerator(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i128 {
        *self.0.denom()
    }

    pub fn as_ratio(&self) -> Ratio<i128> {
        self.0
    }
}

impl From<Ratio<i128>> for ExactRational {
    fn from(r: Ratio<i128>) -> Self {
        ExactRational(r)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator(), self.denominator())
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    Integer::div_ceil(&a, &b)
}

/// Lempel-Greenberg bound on `H(X)` together with the floor-quotient form
/// that must agree with it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LempelGreenberg {
    pub bound: u64,
    /// `nu mod m`.
    pub remainder: u64,
    /// `floor(nu / m)`, or 0 when `nu = m`.
    pub quotient_form: u64,
}

pub fn lempel_greenberg_bound(nu: u64, m: u64) -> Result<LempelGreenberg> {
    if nu == 0 || m == 0 {
        return Err(invalid("length and alphabet size must be positive"));
    }
    let b = nu % m;
    let quotient_form = if nu == m { 0 } else { nu / m };
    // A length-1 sequence has no nonzero shift to bound.
    let bound = if nu == 1 {
        0
    } else {
        let (nu_i, b_i, m_i) = (nu as i128, b as i128, m as i128);
        ceil_div((nu_i - b_i) * (nu_i + b_i - m_i), m_i * (nu_i - 1)).max(0) as u64
    };
    debug_assert_eq!(bound, quotient_form, "nu={nu} m={m}");
    Ok(LempelGreenberg { bound, remainder: b, quotient_form })
}

/// Both Peng-Fan lower bounds on `H(S)` for `family_size` sequences of
/// length `nu` over `m` symbols.
pub fn peng_fan_bounds(nu: u64, family_size: u64, m: u64) -> Result<(i64, i64)> {
    if nu == 0 || family_size == 0 || m == 0 {
        return Err(invalid("all parameters must be positive"));
    }
    let (nu, big_m, m) = (nu as i128, family_size as i128, m as i128);
    let total = nu * big_m;
    if total == 1 {
        return Err(invalid("a single length-1 sequence has no correlation to bound"));
    }
    let first = ceil_div((total - m) * nu, (total - 1) * m);
    let i = total / m;
    let second = ceil_div(2 * i * total - (i + 1) * i * big_m, (total - 1) * big_m);
    Ok((first as i64, second as i64))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxCorrelations {
    /// `H(X_i)` over `1 <= tau < nu`, per sequence.
    pub auto: Vec<u64>,
    /// `H(X_i, X_j)` over all `tau`, for each ordered pair with `i != j`.
    pub cross: Vec<((usize, usize), u64)>,
    /// `H(S)`.
    pub overall: u64,
}

fn check_tables(family: &FhsFamily, tables: &TableSet) -> Result<()> {
    if tables.size() != family.len() {
        return Err(invalid(format!(
            "table set covers {} sequences, family has {}",
            tables.size(),
            family.len()
        )));
    }
    Ok(())
}

pub fn max_correlations(family: &FhsFamily, tables: &TableSet) -> Result<MaxCorrelations> {
    check_tables(family, tables)?;
    let size = family.len();
    let mut auto = Vec::with_capacity(size);
    let mut cross = Vec::new();
    for i in 0..size {
        auto.push(tables.get(i, i)?.values[1..].iter().copied().max().unwrap_or(0));
        for j in (0..size).filter(|&j| j != i) {
            cross.push(((i, j), tables.get(i, j)?.values.iter().copied().max().unwrap_or(0)));
        }
    }
    let overall = auto.iter().chain(cross.iter().map(|(_, v)| v)).copied().max().unwrap_or(0);
    Ok(MaxCorrelations { auto, cross, overall })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Averages {
    /// Autocorrelation mass over `1 <= tau < nu`, summed over sequences.
    pub n_a: u64,
    /// Cross-correlation mass over all `tau`, summed over unordered pairs.
    pub n_c: u64,
    pub a_a: ExactRational,
    pub a_c: ExactRational,
}

/// Total and average auto- and cross-correlation of a family.
///
/// The autocorrelation sum skips `tau = 0`; with the `M(nu - 1)` normaliser
/// only that range makes the average-correlation bound tight.
pub fn average_correlations(family: &FhsFamily, tables: &TableSet) -> Result<Averages> {
    check_tables(family, tables)?;
    let size = family.len() as u64;
    let nu = family.params().nu();
    if size < 2 || nu < 2 {
        return Err(invalid("averages need at least two sequences of length at least two"));
    }
    let mut n_a = 0;
    let mut n_c = 0;
    for i in 0..family.len() {
        n_a += tables.get(i, i)?.values[1..].iter().sum::<u64>();
        for j in i + 1..family.len() {
            n_c += tables.get(i, j)?.values.iter().sum::<u64>();
        }
    }
    let a_a = ExactRational::new(n_a as i128, (size * (nu - 1)) as i128)?;
    let a_c = ExactRational::new(2 * n_c as i128, (nu * size * (size - 1)) as i128)?;
    Ok(Averages { n_a, n_c, a_a, a_c })
}

/// Both sides of the average-Hamming-correlation bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AhCheck {
    pub lhs: ExactRational,
    pub rhs: ExactRational,
    pub equality: bool,
}

/// `A_a / (nu (M-1)) + A_c / (nu - 1)` against `(nu M - m) / (m (nu-1) (M-1))`.
pub fn ah_optimality_check(nu: u64, family_size: u64, m: u64, averages: &Averages) -> Result<AhCheck> {
    if nu < 2 || family_size < 2 || m == 0 {
        return Err(invalid("bound needs nu >= 2, M >= 2 and m >= 1"));
    }
    let (nu, big_m, m) = (nu as i128, family_size as i128, m as i128);
    let lhs = averages.a_a.as_ratio() / (nu * (big_m - 1)) + averages.a_c.as_ratio() / (nu - 1);
    let rhs = Ratio::new(nu * big_m - m, m * (nu - 1) * (big_m - 1));
    Ok(AhCheck { lhs: lhs.into(), rhs: rhs.into(), equality: lhs == rhs })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LempelGreenbergReport {
    #[serde(flatten)]
    pub bound: LempelGreenberg,
    /// Whether each sequence meets the bound with equality.
    pub attained: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PengFanReport {
    pub bounds: (i64, i64),
    pub h_s: u64,
    pub optimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptimalityReport {
    #[serde(skip)]
    pub params: FhsParams,
    pub lempel_greenberg: LempelGreenbergReport,
    pub peng_fan: PengFanReport,
    pub maxima: MaxCorrelations,
    pub averages: Averages,
    pub ah: AhCheck,
    pub uniform: bool,
}

/// Bound report for an arbitrary family over `params`' alphabet.
pub fn optimality_report_for(family: &FhsFamily) -> Result<OptimalityReport> {
    let params = *family.params();
    let tables = TableSet::compute(family)?;
    let nu = params.nu();
    let m = params.alphabet_size() as u64;
    let size = family.len() as u64;
    let maxima = max_correlations(family, &tables)?;
    let averages = average_correlations(family, &tables)?;
    let lg = lempel_greenberg_bound(nu, m)?;
    let pf = peng_fan_bounds(nu, size, m)?;
    let ah = ah_optimality_check(nu, size, m, &averages)?;
    let uniform = is_uniformly_distributed(family).uniform;
    Ok(OptimalityReport {
        params,
        lempel_greenberg: LempelGreenbergReport {
            bound: lg,
            attained: maxima.auto.iter().map(|&h| h == lg.bound).collect(),
        },
        peng_fan: PengFanReport {
            bounds: pf,
            h_s: maxima.overall,
            optimal: [pf.0, pf.1].contains(&(maxima.overall as i64)),
        },
        maxima,
        averages,
        ah,
        uniform,
    })
}

pub fn optimality_report(params: &FhsParams) -> Result<OptimalityReport> {
    optimality_report_for(&build_family(params))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, n: u32) -> FhsParams {
        FhsParams::new(p, n).unwrap()
    }

    #[test]
    fn lempel_greenberg_examples() {
        assert_eq!(lempel_greenberg_bound(9, 4).unwrap().bound, 2);
        assert_eq!(lempel_greenberg_bound(25, 4).unwrap().bound, 6);
        assert_eq!(lempel_greenberg_bound(25, 4).unwrap().quotient_form, 6);
        assert_eq!(lempel_greenberg_bound(6, 6).unwrap().bound, 0);
        assert_eq!(lempel_greenberg_bound(1, 3).unwrap().bound, 0);
        assert!(lempel_greenberg_bound(0, 3).is_err());
    }

    #[test]
    fn lempel_greenberg_equals_quotient_form() {
        for nu in 1..300 {
            for m in 1..40 {
                let lg = lempel_greenberg_bound(nu, m).unwrap();
                assert_eq!(lg.bound, lg.quotient_form, "nu={nu} m={m}");
            }
        }
    }

    #[test]
    fn peng_fan_examples() {
        assert_eq!(peng_fan_bounds(9, 4, 4).unwrap(), (3, 3));
        assert_eq!(peng_fan_bounds(27, 6, 6).unwrap().0, 5);
        assert_eq!(peng_fan_bounds(3, 2, 6).unwrap().0, 0);
        assert!(peng_fan_bounds(1, 1, 1).is_err());
    }

    #[test]
    fn exact_rational_display() {
        assert_eq!(ExactRational::new(14, 8).unwrap().to_string(), "7/4");
        assert_eq!(ExactRational::new(-2, -6).unwrap().to_string(), "1/3");
        assert_eq!(ExactRational::from_integer(9).to_string(), "9/1");
        assert!(ExactRational::new(1, 0).is_err());
        let json = serde_json::to_string(&ExactRational::new(58, 27).unwrap()).unwrap();
        assert_eq!(json, "\"58/27\"");
    }

    #[test]
    fn small_instance_report() {
        let r = optimality_report(&params(3, 2)).unwrap();
        assert_eq!(r.maxima.auto, vec![7; 4]);
        assert_eq!(r.maxima.cross.iter().map(|(_, v)| *v).max(), Some(6));
        assert_eq!(r.maxima.overall, 7);
        assert_eq!((r.averages.n_a, r.averages.n_c), (56, 116));
        assert_eq!(r.averages.a_a.to_string(), "7/4");
        assert_eq!(r.averages.a_c.to_string(), "58/27");
        assert_eq!(r.ah.lhs.to_string(), "1/3");
        assert_eq!(r.ah.rhs.to_string(), "1/3");
        assert!(r.ah.equality && r.uniform);
        assert_eq!(r.peng_fan.bounds, (3, 3));
        assert!(!r.peng_fan.optimal);
        assert_eq!(r.lempel_greenberg.bound.bound, 2);
        assert_eq!(r.lempel_greenberg.attained, vec![false; 4]);
    }

    #[test]
    fn perturbation_breaks_equality() {
        let fam = build_family(&params(3, 2));
        let current = fam.get(2).unwrap().symbols()[5];
        let bent = fam.with_symbol(2, 5, (current + 1) % 4).unwrap();
        let r = optimality_report_for(&bent).unwrap();
        assert!(!r.uniform);
        assert!(!r.ah.equality);
        assert!(r.ah.lhs > r.ah.rhs);
    }

    #[test]
    fn single_symbol_family_averages() {
        let pr = params(3, 2);
        let seqs = (0..4)
            .map(|i| crate::fhs::FhsSequence::from_symbols(i, pr, vec![0; 9]).unwrap())
            .collect();
        let fam = FhsFamily::from_sequences(pr, seqs).unwrap();
        let tables = TableSet::compute(&fam).unwrap();
        let avg = average_correlations(&fam, &tables).unwrap();
        assert_eq!(avg.a_c, ExactRational::from_integer(9));
        assert_eq!(avg.a_a, ExactRational::from_integer(9));
    }

    #[test]
    fn max_needs_matching_tables() {
        let fam = build_family(&params(3, 2));
        let other = TableSet::compute(&build_family(&params(3, 3))).unwrap();
        assert!(max_correlations(&fam, &other).is_err());
    }
}
