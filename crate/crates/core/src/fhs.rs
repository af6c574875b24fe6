//! The sequence family: `X_i(t) = (class(t) - i) mod 2n`, so that symbol `j`
//! of `X_i` is supported on class `C_{(i+j) mod 2n}`.

use crate::cyclotomy::{class_table, FhsParams};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FhsSequence {
    index: usize,
    params: FhsParams,
    symbols: Vec<u32>,
}

impl FhsSequence {
    /// Wraps an arbitrary symbol array of the right length and alphabet.
    ///
    /// Used for perturbed families when exercising the bound checks; such
    /// sequences need not follow the construction.
    pub fn from_symbols(index: usize, params: FhsParams, symbols: Vec<u32>) -> Result<Self> {
        if symbols.len() as u64 != params.nu() {
            return Err(invalid(format!(
                "expected {} symbols, got {}",
                params.nu(),
                symbols.len()
            )));
        }
        let m = params.alphabet_size() as u32;
        if let Some(bad) = symbols.iter().find(|&&s| s >= m) {
            return Err(invalid(format!("symbol {bad} outside alphabet 0..{m}")));
        }
        Ok(FhsSequence { index, params, symbols })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn params(&self) -> &FhsParams {
        &self.params
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

fn shifted(table: &[u8], i: usize, m: usize) -> Vec<u32> {
    table.iter().map(|&c| ((c as usize + m - i) % m) as u32).collect()
}

pub fn build_sequence(i: usize, params: &FhsParams) -> Result<FhsSequence> {
    let m = params.alphabet_size();
    if i >= m {
        return Err(invalid(format!("sequence index {i} outside 0..{m}")));
    }
    let table = class_table(params);
    Ok(FhsSequence { index: i, params: *params, symbols: shifted(&table, i, m) })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FhsFamily {
    params: FhsParams,
    sequences: Vec<FhsSequence>,
}

impl FhsFamily {
    /// Assembles a family from sequences indexed `0..len`.
    pub fn from_sequences(params: FhsParams, sequences: Vec<FhsSequence>) -> Result<Self> {
        for (i, s) in sequences.iter().enumerate() {
            if s.params != params {
                return Err(Error::ParamsMismatch);
            }
            if s.index != i {
                return Err(invalid(format!("sequence at position {i} carries index {}", s.index)));
            }
        }
        Ok(FhsFamily { params, sequences })
    }

    pub fn params(&self) -> &FhsParams {
        &self.params
    }

    pub fn sequences(&self) -> &[FhsSequence] {
        &self.sequences
    }

    pub fn get(&self, i: usize) -> Result<&FhsSequence> {
        self.sequences
            .get(i)
            .ok_or_else(|| invalid(format!("sequence index {i} outside 0..{}", self.sequences.len())))
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    /// Copy of the family with `X_seq(t)` replaced by `symbol`.
    pub fn with_symbol(&self, seq: usize, t: usize, symbol: u32) -> Result<Self> {
        let mut out = self.clone();
        let target = out
            .sequences
            .get_mut(seq)
            .ok_or_else(|| invalid(format!("sequence index {seq} out of range")))?;
        if t >= target.symbols.len() || symbol as usize >= self.params.alphabet_size() {
            return Err(invalid(format!("cannot set position {t} to symbol {symbol}")));
        }
        target.symbols[t] = symbol;
        Ok(out)
    }
}

pub fn build_family(params: &FhsParams) -> FhsFamily {
    let m = params.alphabet_size();
    let table = class_table(params);
    let sequences = (0..m)
        .map(|i| FhsSequence { index: i, params: *params, symbols: shifted(&table, i, m) })
        .collect();
    FhsFamily { params: *params, sequences }
}

/// `N_X(f)` for every symbol `f`, indexed by symbol.
pub fn frequency_counts(x: &FhsSequence) -> Vec<u64> {
    let mut counts = vec![0; x.params.alphabet_size()];
    for &s in &x.symbols {
        counts[s as usize] += 1;
    }
    counts
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Uniformity {
    pub uniform: bool,
    /// `N_S(f)` summed over the family, indexed by symbol.
    pub totals: Vec<u64>,
}

pub fn is_uniformly_distributed(family: &FhsFamily) -> Uniformity {
    let mut totals = vec![0; family.params.alphabet_size()];
    for s in &family.sequences {
        for (t, c) in totals.iter_mut().zip(frequency_counts(s)) {
            *t += c;
        }
    }
    let uniform = totals.windows(2).all(|w| w[0] == w[1]);
    Uniformity { uniform, totals }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomy::{class_members, ClassId};

    fn params(p: u64, n: u32) -> FhsParams {
        FhsParams::new(p, n).unwrap()
    }

    #[test]
    fn sequence_examples() {
        let pr = params(3, 2);
        assert_eq!(build_sequence(0, &pr).unwrap().symbols(), &[0, 2, 3, 0, 2, 3, 1, 2, 3]);
        assert_eq!(build_sequence(1, &pr).unwrap().symbols(), &[3, 1, 2, 3, 1, 2, 0, 1, 2]);
        for i in 0..4 {
            assert_eq!(build_sequence(i, &pr).unwrap().symbols()[0], ((4 - i) % 4) as u32);
        }
        assert!(build_sequence(4, &pr).is_err());
    }

    #[test]
    fn family_sizes() {
        for (p, n, m, nu) in [(3, 2, 4, 9), (3, 3, 6, 27), (7, 3, 6, 343)] {
            let fam = build_family(&params(p, n));
            assert_eq!(fam.len(), m);
            assert!(fam.sequences().iter().all(|s| s.len() == nu));
            assert!(fam.sequences().iter().enumerate().all(|(i, s)| s.index() == i));
        }
    }

    #[test]
    fn family_agrees_with_single_builds() {
        let pr = params(5, 3);
        let fam = build_family(&pr);
        for i in 0..pr.family_size() {
            assert_eq!(fam.get(i).unwrap(), &build_sequence(i, &pr).unwrap());
        }
    }

    #[test]
    fn frequency_examples() {
        let fam = build_family(&params(3, 2));
        assert_eq!(frequency_counts(fam.get(0).unwrap()), vec![2, 1, 3, 3]);
        assert_eq!(frequency_counts(fam.get(1).unwrap()), vec![1, 3, 3, 2]);
        assert_eq!(frequency_counts(fam.get(0).unwrap()).iter().sum::<u64>(), 9);
    }

    #[test]
    fn supports_are_rotated_classes() {
        for (p, n) in [(3, 3), (5, 2), (7, 2)] {
            let pr = params(p, n);
            let m = pr.alphabet_size();
            let fam = build_family(&pr);
            for (i, x) in fam.sequences().iter().enumerate() {
                for j in 0..m {
                    let support: Vec<u64> = (0..pr.nu())
                        .filter(|&t| x.symbols()[t as usize] == j as u32)
                        .collect();
                    let class = ClassId::from_index((i + j) % m, &pr).unwrap();
                    assert_eq!(support, class_members(class, &pr));
                }
                let x0 = fam.get(0).unwrap().symbols();
                for (t, &s) in x.symbols().iter().enumerate() {
                    assert_eq!(s as usize, (x0[t] as usize + m - i) % m);
                }
            }
        }
    }

    #[test]
    fn uniform_distribution() {
        for (p, n) in [(3, 2), (7, 3), (13, 2)] {
            let pr = params(p, n);
            let u = is_uniformly_distributed(&build_family(&pr));
            assert!(u.uniform);
            assert!(u.totals.iter().all(|&t| t == pr.nu()));
        }
        let fam = build_family(&params(3, 2));
        let bent = fam.with_symbol(0, 4, 0).unwrap();
        assert!(!is_uniformly_distributed(&bent).uniform);
    }

    #[test]
    fn rejects_malformed_sequences() {
        let pr = params(3, 2);
        assert!(FhsSequence::from_symbols(0, pr, vec![0; 8]).is_err());
        assert!(FhsSequence::from_symbols(0, pr, vec![4; 9]).is_err());
        let fam = build_family(&pr);
        assert!(fam.with_symbol(0, 9, 0).is_err());
        assert!(fam.with_symbol(0, 0, 4).is_err());
        let other = build_sequence(0, &params(5, 2)).unwrap();
        assert_eq!(FhsFamily::from_sequences(pr, vec![other]), Err(Error::ParamsMismatch));
    }
}
