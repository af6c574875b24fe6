//! Periodic Hamming correlation: the brute-force evaluator, the closed
//! forms, and the comparison between the two.

mod closed;

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomy::FhsParams;
use crate::error::{invalid, Error, Result};
use crate::fhs::{FhsFamily, FhsSequence};

pub use closed::{
    autocorrelation_case, autocorrelation_closed, crosscorrelation_case, crosscorrelation_closed,
    length_p_cubed_table, reduced_delta, CaseEvaluation, ClosedFormVerdict, Rule,
};

/// `H(X, Y : tau)`: positions `t` with `X(t + tau) = Y(t)`, indices mod `nu`.
pub fn hamming_correlation(x: &FhsSequence, y: &FhsSequence, tau: u64) -> Result<u64> {
    if x.params() != y.params() || x.len() != y.len() {
        return Err(Error::ParamsMismatch);
    }
    if tau >= x.len() as u64 {
        return Err(invalid(format!("shift {tau} outside 0..{}", x.len())));
    }
    Ok(count_hits(x.symbols(), y.symbols(), tau as usize))
}

fn count_hits(x: &[u32], y: &[u32], tau: usize) -> u64 {
    let nu = x.len();
    let (head, tail) = y.split_at(nu - tau);
    let wrapped = x[tau..].iter().zip(head).filter(|(a, b)| a == b).count();
    let rest = x[..tau].iter().zip(tail).filter(|(a, b)| a == b).count();
    (wrapped + rest) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Auto,
    Cross,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationTable {
    pub params: FhsParams,
    pub pair: (usize, usize),
    pub kind: TableKind,
    /// `values[tau]` for `0 <= tau < nu`.
    pub values: Vec<u64>,
}

/// Brute-force table over every shift, computed in parallel over `tau`.
pub fn correlation_table(family: &FhsFamily, i: usize, j: usize) -> Result<CorrelationTable> {
    let x = family.get(i)?.symbols();
    let y = family.get(j)?.symbols();
    let values = (0..x.len()).into_par_iter().map(|tau| count_hits(x, y, tau)).collect();
    Ok(CorrelationTable {
        params: *family.params(),
        pair: (i, j),
        kind: if i == j { TableKind::Auto } else { TableKind::Cross },
        values,
    })
}

/// Tables for every ordered pair of a family.
#[derive(Debug, Clone)]
pub struct TableSet {
    size: usize,
    tables: Vec<CorrelationTable>,
}

impl TableSet {
    pub fn compute(family: &FhsFamily) -> Result<Self> {
        let size = family.len();
        let tables = (0..size * size)
            .map(|k| correlation_table(family, k / size, k % size))
            .collect::<Result<_>>()?;
        Ok(TableSet { size, tables })
    }

    /// Number of sequences the set covers.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> Result<&CorrelationTable> {
        if i >= self.size || j >= self.size {
            return Err(invalid(format!("no table for pair ({i}, {j})")));
        }
        Ok(&self.tables[i * self.size + j])
    }
}

/// A covered closed-form value that disagrees with brute force.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub p: u64,
    pub n: u32,
    pub pair: (usize, usize),
    pub tau: u64,
    pub brute: u64,
    pub closed: Option<u64>,
    pub rule: Rule,
}

/// One closed-form comparison against brute force.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub delta: usize,
    pub tau: u64,
    pub brute: u64,
    pub case: CaseEvaluation,
}

/// Every covered `(delta, tau)` of an instance paired with its brute-force
/// value. Uses the pairs `(0, delta)`, which suffices because the tables of a
/// constructed family depend only on `delta = j - i mod 2n`.
pub fn compare_closed_forms(params: &FhsParams) -> Result<Vec<Comparison>> {
    let family = crate::fhs::build_family(params);
    let mut out = Vec::new();
    let auto = correlation_table(&family, 0, 0)?;
    for tau in 1..params.nu() {
        let case = autocorrelation_case(params, tau)?;
        out.push(Comparison { delta: 0, tau, brute: auto.values[tau as usize], case });
    }
    if params.is_one_mod_four() {
        return Ok(out);
    }
    for delta in 1..params.alphabet_size() {
        let table = correlation_table(&family, 0, delta)?;
        for tau in 0..params.nu() {
            if let Some(case) = crosscorrelation_case(params, delta, tau)? {
                out.push(Comparison { delta, tau, brute: table.values[tau as usize], case });
            }
        }
    }
    Ok(out)
}

/// All covered closed-form values of an instance that disagree with brute
/// force; empty certifies the instance.
pub fn verify_closed_forms(params: &FhsParams) -> Result<Vec<Discrepancy>> {
    Ok(compare_closed_forms(params)?
        .into_iter()
        .filter_map(|c| {
            let closed = c.case.value().ok();
            (closed != Some(c.brute)).then(|| Discrepancy {
                p: params.p(),
                n: params.n(),
                pair: (0, c.delta),
                tau: c.tau,
                brute: c.brute,
                closed,
                rule: c.case.rule,
            })
        })
        .collect())
}
