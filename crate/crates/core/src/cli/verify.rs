use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use super::{append_lines, json, Format, ParamsView, RunManifest, VERIFY_BUDGET};
use crate::bounds::optimality_report_for;
use crate::correlation::compare_closed_forms;
use crate::cyclotomy::{
    class_table, class_table_by_primitive_root, cyclotomic_number_bruteforce,
    cyclotomic_number_closed, delta_lk, delta_star, level_block_size, DeltaProfile, FhsParams, Mode,
    Parity,
};
use crate::errata::{collect_errata, ErrataEntry};
use crate::error::{Error, Result};
use crate::fhs::{build_family, is_uniformly_distributed};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: &'static str,
    /// `None` when the check does not apply to the instance.
    pub passed: Option<bool>,
    pub detail: String,
}

impl CheckOutcome {
    fn new(check: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        CheckOutcome { check, passed: Some(passed), detail: detail.into() }
    }

    fn skipped(check: &'static str, detail: impl Into<String>) -> Self {
        CheckOutcome { check, passed: None, detail: detail.into() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub params: ParamsView,
    pub checks: Vec<CheckOutcome>,
    #[serde(skip)]
    pub errata: Vec<ErrataEntry>,
}

impl InstanceReport {
    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed == Some(false)).count()
    }
}

fn partition_check(params: &FhsParams) -> CheckOutcome {
    let table = class_table(params);
    let oracle = class_table_by_primitive_root(params);
    let mut sizes = vec![0u64; params.alphabet_size()];
    for &c in &table {
        sizes[c as usize] += 1;
    }
    let sizes_ok = (0..params.alphabet_size()).all(|idx| {
        let k = idx as u32 / 2 + 1;
        sizes[idx] == level_block_size(params.p(), k) + u64::from(idx == 0)
    });
    let mismatched = table.iter().zip(&oracle).filter(|(a, b)| a != b).count();
    let ok = sizes_ok && mismatched == 0 && sizes.iter().sum::<u64>() == params.nu();
    CheckOutcome::new("partition", ok, format!("class sizes {sizes:?}; {mismatched} oracle mismatches"))
}

fn cyclotomic_check(params: &FhsParams) -> Result<CheckOutcome> {
    let mut compared = 0;
    let mut bad = Vec::new();
    for k in 1..=params.n() {
        for i in Parity::BOTH {
            for j in Parity::BOTH {
                let closed = cyclotomic_number_closed(i, j, params.p(), k)?;
                let brute = cyclotomic_number_bruteforce(i, j, params.p(), k)?;
                compared += 1;
                if closed != brute {
                    bad.push(format!("({},{}) k={k}: {closed} vs {brute}", i.index(), j.index()));
                }
            }
        }
    }
    Ok(CheckOutcome::new("cyclotomic_numbers", bad.is_empty(), summary(compared, &bad)))
}

fn delta_check(params: &FhsParams) -> Result<CheckOutcome> {
    let table = class_table(params);
    let n = params.n();
    let mut compared = 0u64;
    let mut bad = Vec::new();
    for tau in 0..params.nu() {
        let profile = DeltaProfile::brute(tau, params, &table)?;
        for k in 1..=n {
            for i in Parity::BOTH {
                compared += 1;
                if delta_star(i, k, tau, params, Mode::Closed)? != profile.star(i, k) {
                    bad.push(format!("star i={} k={k} tau={tau}", i.index()));
                }
                for l in 1..=n {
                    for j in Parity::BOTH {
                        compared += 1;
                        if delta_lk(i, j, l, k, tau, params, Mode::Closed)? != profile.pair(i, j, l, k) {
                            bad.push(format!("i={} j={} l={l} k={k} tau={tau}", i.index(), j.index()));
                        }
                    }
                }
            }
        }
    }
    Ok(CheckOutcome::new("delta_functions", bad.is_empty(), summary(compared, &bad)))
}

fn summary(compared: u64, bad: &[String]) -> String {
    match bad.first() {
        None => format!("{compared} compared"),
        Some(first) => format!("{compared} compared; {} mismatches, first {first}", bad.len()),
    }
}

/// Runs every check on one instance.
pub fn verify_instance(params: &FhsParams) -> Result<InstanceReport> {
    let mut checks = vec![partition_check(params), cyclotomic_check(params)?, delta_check(params)?];

    let comparisons = compare_closed_forms(params)?;
    let describe = |delta_is_auto: bool| {
        let mut compared = 0;
        let mut bad = Vec::new();
        for c in comparisons.iter().filter(|c| (c.delta == 0) == delta_is_auto) {
            compared += 1;
            if c.case.value().ok() != Some(c.brute) {
                bad.push(format!("delta={} tau={} rule={}", c.delta, c.tau, c.case.rule));
            }
        }
        (compared, bad)
    };
    let (compared, bad) = describe(true);
    checks.push(CheckOutcome::new("autocorrelation", bad.is_empty(), summary(compared, &bad)));
    if params.is_one_mod_four() {
        checks.push(CheckOutcome::skipped("crosscorrelation", "no closed form for p = 1 mod 4"));
    } else {
        let (compared, bad) = describe(false);
        checks.push(CheckOutcome::new("crosscorrelation", bad.is_empty(), summary(compared, &bad)));
    }

    let family = build_family(params);
    let uniformity = is_uniformly_distributed(&family);
    let uniform_ok = uniformity.uniform && uniformity.totals.iter().all(|&t| t == params.nu());
    checks.push(CheckOutcome::new(
        "uniform_distribution",
        uniform_ok,
        format!("N_S(f) = {}", uniformity.totals[0]),
    ));

    let report = optimality_report_for(&family)?;
    checks.push(CheckOutcome::new(
        "ah_equality",
        report.ah.equality && report.ah.equality == uniformity.uniform,
        format!("lhs={} rhs={}", report.ah.lhs, report.ah.rhs),
    ));

    let errata = collect_errata(params, &comparisons, &report.averages)?;
    Ok(InstanceReport { params: params.into(), checks, errata })
}

#[derive(Serialize)]
struct SweepParams<'a> {
    p: &'a [u64],
    n: &'a [u32],
}

pub(super) fn run_verify(ps: &[u64], ns: &[u32], format: Format, errata_path: &Path) -> Result<(String, i32)> {
    let mut grid = Vec::new();
    let mut cost: u128 = 0;
    for &p in ps {
        for &n in ns {
            let params = FhsParams::new(p, n)?;
            let size = params.family_size() as u128;
            cost += (params.nu() as u128).pow(2) * size * size;
            grid.push(params);
        }
    }
    if cost > VERIFY_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "sweep needs about {cost} symbol comparisons, limit is {VERIFY_BUDGET}"
        )));
    }

    let mut manifest = RunManifest::new("verify", format);
    let mut reports = Vec::with_capacity(grid.len());
    let mut ledger = Vec::new();
    for params in &grid {
        let report = verify_instance(params)?;
        for c in &report.checks {
            if let Some(ok) = c.passed {
                manifest.record(ok);
            }
        }
        ledger.extend(report.errata.iter().map(ErrataEntry::to_json_line));
        reports.push(report);
    }
    append_lines(errata_path, &ledger)?;
    manifest.errata_emitted = ledger.len() as u64;
    manifest.finish();

    let text = match format {
        Format::Csv => {
            let mut s = String::from("p,n,check,status,detail\n");
            for r in &reports {
                for c in &r.checks {
                    let status = match c.passed {
                        Some(true) => "pass",
                        Some(false) => "fail",
                        None => "skip",
                    };
                    // Details never contain commas in the pass path; keep the column CSV-safe anyway.
                    let detail = c.detail.replace(',', ";");
                    writeln!(s, "{},{},{},{status},{detail}", r.params.p, r.params.n, c.check).unwrap();
                }
            }
            s
        }
        Format::Json => json(
            SweepParams { p: ps, n: ns },
            serde_json::json!({ "instances": reports }),
            manifest.clone(),
        ),
    };
    Ok((text, manifest.exit_status))
}
