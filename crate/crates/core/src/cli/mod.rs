//! Command-line surface. The `fhs` binary is a thin wrapper around [`run`],
//! which returns the rendered output and exit code instead of printing, so
//! the commands can be driven from tests.
//!
//! Exit codes: 0 success, 1 failed check, 2 usage error.

pub mod verify;

use std::fmt::Write as _;
use std::fs::OpenOptions;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::optimality_report;
use crate::correlation::{
    autocorrelation_closed, correlation_table, crosscorrelation_closed, ClosedFormVerdict, Rule,
};
use crate::cyclotomy::FhsParams;
use crate::error::{Error, Result};
use crate::fhs::{build_family, build_sequence, FhsSequence};

pub use verify::{verify_instance, CheckOutcome, InstanceReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Upper limit on `sum nu^2 M^2` across a verify sweep.
pub const VERIFY_BUDGET: u128 = 5_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrelateMode {
    Brute,
    Closed,
    Both,
}

#[derive(Debug, Parser)]
#[command(name = "fhs", version, about = "Cyclotomic frequency-hopping sequences of length p^n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit one sequence or the whole family.
    Generate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        seq: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hamming correlation of one pair over every shift.
    Correlate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, num_args = 2, value_names = ["I", "J"], required = true)]
        pair: Vec<usize>,
        #[arg(long, value_enum, default_value = "both")]
        mode: CorrelateMode,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every closed form and optimality claim over a grid of instances.
    Verify {
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON-lines errata ledger, appended to.
        #[arg(long, default_value = "fhs-errata.jsonl")]
        errata: PathBuf,
    },
    /// Correlation bounds and optimality verdicts.
    Bounds {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunManifest {
    pub command: &'static str,
    pub format: Format,
    pub exit_status: i32,
    pub checks_passed: u64,
    pub checks_failed: u64,
    pub errata_emitted: u64,
}

impl RunManifest {
    fn new(command: &'static str, format: Format) -> Self {
        RunManifest { command, format, exit_status: EXIT_OK, checks_passed: 0, checks_failed: 0, errata_emitted: 0 }
    }

    fn record(&mut self, ok: bool) {
        if ok {
            self.checks_passed += 1;
        } else {
            self.checks_failed += 1;
        }
    }

    fn finish(&mut self) {
        self.exit_status = if self.checks_failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED };
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamsView {
    pub p: u64,
    pub n: u32,
    pub nu: u64,
    pub m: usize,
    #[serde(rename = "M")]
    pub family_size: usize,
}

impl From<&FhsParams> for ParamsView {
    fn from(pr: &FhsParams) -> Self {
        ParamsView { p: pr.p(), n: pr.n(), nu: pr.nu(), m: pr.alphabet_size(), family_size: pr.family_size() }
    }
}

#[derive(Serialize)]
struct Document<P: Serialize, T: Serialize> {
    params: P,
    payload: T,
    manifest: RunManifest,
}

fn json<P: Serialize, T: Serialize>(params: P, payload: T, manifest: RunManifest) -> String {
    let mut s = serde_json::to_string_pretty(&Document { params, payload, manifest }).expect("serializable");
    s.push('\n');
    s
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { stdout: text, stderr: String::new(), exit_code: EXIT_OK }
                }
                _ => usage(text),
            };
        }
    };
    let (out, result) = match cli.command {
        Command::Generate { p, n, seq, format, out } => (out, generate(p, n, seq, format)),
        Command::Correlate { p, n, pair, mode, format, out } => {
            (out, correlate(p, n, (pair[0], pair[1]), mode, format))
        }
        Command::Verify { p, n, format, out, errata } => (out, verify::run_verify(&p, &n, format, &errata)),
        Command::Bounds { p, n, format, out } => (out, bounds(p, n, format)),
    };
    match result {
        Ok((text, code)) => deliver(text, code, out),
        Err(e) => usage(format!("error: {e}\n")),
    }
}

fn usage(stderr: String) -> Outcome {
    Outcome { stdout: String::new(), stderr, exit_code: EXIT_USAGE }
}

fn deliver(text: String, code: i32, out: Option<PathBuf>) -> Outcome {
    match out {
        None => Outcome { stdout: text, stderr: String::new(), exit_code: code },
        Some(path) => match std::fs::write(&path, text) {
            Ok(()) => Outcome { stdout: String::new(), stderr: String::new(), exit_code: code },
            Err(e) => usage(format!("error: cannot write {}: {e}\n", path.display())),
        },
    }
}

pub(crate) fn append_lines(path: &std::path::Path, lines: &[String]) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidArgument(format!("cannot append to {}: {e}", path.display()));
    let mut f = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
    for line in lines {
        writeln!(f, "{line}").map_err(io)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SequenceView<'a> {
    index: usize,
    symbols: &'a [u32],
}

/// `generate`: CSV has one row per sequence, the index followed by its symbols.
pub fn generate(p: u64, n: u32, seq: Option<usize>, format: Format) -> Result<(String, i32)> {
    let params = FhsParams::new(p, n)?;
    let sequences: Vec<FhsSequence> = match seq {
        Some(i) => vec![build_sequence(i, &params)?],
        None => build_family(&params).sequences().to_vec(),
    };
    let mut manifest = RunManifest::new("generate", format);
    manifest.finish();
    let text = match format {
        Format::Csv => {
            let mut s = String::from("index");
            for t in 0..params.nu() {
                write!(s, ",t{t}").unwrap();
            }
            s.push('\n');
            for x in &sequences {
                write!(s, "{}", x.index()).unwrap();
                for v in x.symbols() {
                    write!(s, ",{v}").unwrap();
                }
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let views: Vec<_> =
                sequences.iter().map(|x| SequenceView { index: x.index(), symbols: x.symbols() }).collect();
            json(ParamsView::from(&params), serde_json::json!({ "sequences": views }), manifest.clone())
        }
    };
    Ok((text, manifest.exit_status))
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrelationRow {
    pub tau: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub covered: Option<bool>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<Rule>,
}

/// Closed form for the pair `(i, j)` at `tau`. The zero shift of an
/// autocorrelation is the trivial full match.
fn closed_for_pair(params: &FhsParams, i: usize, j: usize, tau: u64) -> Result<ClosedFormVerdict> {
    if i == j {
        if tau == 0 {
            return Ok(ClosedFormVerdict { covered: true, value: Some(params.nu()), rule: Some(Rule("auto/trivial/tau0")) });
        }
        return autocorrelation_closed(params, tau);
    }
    let m = params.alphabet_size();
    crosscorrelation_closed(params, (j + m - i) % m, tau)
}

/// `correlate`: one row per shift; in `both` mode the exit code is 1 when
/// any covered closed form disagrees with brute force.
pub fn correlate(
    p: u64,
    n: u32,
    pair: (usize, usize),
    mode: CorrelateMode,
    format: Format,
) -> Result<(String, i32)> {
    let params = FhsParams::new(p, n)?;
    let family = build_family(&params);
    let (i, j) = pair;
    let table = correlation_table(&family, i, j)?;
    let mut manifest = RunManifest::new("correlate", format);
    let mut rows = Vec::with_capacity(table.values.len());
    for (tau, &brute) in table.values.iter().enumerate() {
        let tau = tau as u64;
        let mut row = CorrelationRow { tau, brute: None, closed: None, covered: None, matches: None, rule: None };
        if mode != CorrelateMode::Closed {
            row.brute = Some(brute);
        }
        if mode != CorrelateMode::Brute {
            let v = closed_for_pair(&params, i, j, tau)?;
            row.closed = v.value;
            row.covered = Some(v.covered);
            row.rule = v.rule;
            if mode == CorrelateMode::Both && v.covered {
                let ok = v.value == Some(brute);
                row.matches = Some(ok);
                manifest.record(ok);
            }
        }
        rows.push(row);
    }
    manifest.finish();
    let text = match format {
        Format::Csv => {
            let header = match mode {
                CorrelateMode::Brute => "tau,brute",
                CorrelateMode::Closed => "tau,closed,covered,rule",
                CorrelateMode::Both => "tau,brute,closed,covered,match,rule",
            };
            let mut s = format!("{header}\n");
            let opt = |v: Option<u64>| v.map(|v| v.to_string()).unwrap_or_default();
            let rule = |r: Option<Rule>| r.map(|r| r.0.to_string()).unwrap_or_default();
            for r in &rows {
                let line = match mode {
                    CorrelateMode::Brute => format!("{},{}", r.tau, opt(r.brute)),
                    CorrelateMode::Closed => format!(
                        "{},{},{},{}",
                        r.tau,
                        opt(r.closed),
                        r.covered.unwrap_or(false),
                        rule(r.rule)
                    ),
                    CorrelateMode::Both => format!(
                        "{},{},{},{},{},{}",
                        r.tau,
                        opt(r.brute),
                        opt(r.closed),
                        r.covered.unwrap_or(false),
                        r.matches.map(|b| b.to_string()).unwrap_or_default(),
                        rule(r.rule)
                    ),
                };
                s.push_str(&line);
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let m = params.alphabet_size();
            let payload = serde_json::json!({
                "pair": [i, j],
                "delta": (j + m - i) % m,
                "mode": mode,
                "rows": rows,
            });
            json(ParamsView::from(&params), payload, manifest.clone())
        }
    };
    Ok((text, manifest.exit_status))
}

#[derive(Serialize)]
struct BoundsPayload {
    lempel_greenberg: u64,
    lempel_greenberg_attained: Vec<bool>,
    peng_fan: (i64, i64),
    #[serde(rename = "H_X")]
    h_x: Vec<u64>,
    #[serde(rename = "H_S")]
    h_s: u64,
    #[serde(rename = "N_a")]
    n_a: u64,
    #[serde(rename = "N_c")]
    n_c: u64,
    #[serde(rename = "A_a")]
    a_a: String,
    #[serde(rename = "A_c")]
    a_c: String,
    ah_lhs: String,
    ah_rhs: String,
    ah_equality: bool,
    uniform: bool,
    lempel_greenberg_optimal: bool,
    peng_fan_optimal: bool,
    ah_optimal: bool,
}

/// `bounds`: CSV is `metric,value` rows.
pub fn bounds(p: u64, n: u32, format: Format) -> Result<(String, i32)> {
    let params = FhsParams::new(p, n)?;
    let r = optimality_report(&params)?;
    let mut manifest = RunManifest::new("bounds", format);
    // Lower bounds must hold and the average bound must agree with uniformity.
    manifest.record(r.ah.lhs >= r.ah.rhs);
    manifest.record(r.ah.equality == r.uniform);
    manifest.record(r.maxima.overall as i64 >= r.peng_fan.bounds.0.max(r.peng_fan.bounds.1));
    manifest.record(r.maxima.auto.iter().all(|&h| h >= r.lempel_greenberg.bound.bound));
    manifest.finish();
    let payload = BoundsPayload {
        lempel_greenberg: r.lempel_greenberg.bound.bound,
        lempel_greenberg_optimal: r.lempel_greenberg.attained.iter().all(|&a| a),
        lempel_greenberg_attained: r.lempel_greenberg.attained.clone(),
        peng_fan: r.peng_fan.bounds,
        h_x: r.maxima.auto.clone(),
        h_s: r.maxima.overall,
        n_a: r.averages.n_a,
        n_c: r.averages.n_c,
        a_a: r.averages.a_a.to_string(),
        a_c: r.averages.a_c.to_string(),
        ah_lhs: r.ah.lhs.to_string(),
        ah_rhs: r.ah.rhs.to_string(),
        ah_equality: r.ah.equality,
        uniform: r.uniform,
        peng_fan_optimal: r.peng_fan.optimal,
        ah_optimal: r.ah.equality,
    };
    let text = match format {
        Format::Csv => {
            let join = |v: &[u64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";");
            let rows: Vec<(&str, String)> = vec![
                ("p", p.to_string()),
                ("n", n.to_string()),
                ("nu", params.nu().to_string()),
                ("m", params.alphabet_size().to_string()),
                ("M", params.family_size().to_string()),
                ("lempel_greenberg", payload.lempel_greenberg.to_string()),
                ("peng_fan_1", payload.peng_fan.0.to_string()),
                ("peng_fan_2", payload.peng_fan.1.to_string()),
                ("H_X", join(&payload.h_x)),
                ("H_S", payload.h_s.to_string()),
                ("N_a", payload.n_a.to_string()),
                ("N_c", payload.n_c.to_string()),
                ("A_a", payload.a_a.clone()),
                ("A_c", payload.a_c.clone()),
                ("ah_lhs", payload.ah_lhs.clone()),
                ("ah_rhs", payload.ah_rhs.clone()),
                ("ah_equality", payload.ah_equality.to_string()),
                ("uniform", payload.uniform.to_string()),
                ("lempel_greenberg_optimal", payload.lempel_greenberg_optimal.to_string()),
                ("peng_fan_optimal", payload.peng_fan_optimal.to_string()),
                ("ah_optimal", payload.ah_optimal.to_string()),
            ];
            let mut s = String::from("metric,value\n");
            for (k, v) in rows {
                writeln!(s, "{k},{v}").unwrap();
            }
            s
        }
        Format::Json => json(ParamsView::from(&params), payload, manifest.clone()),
    };
    Ok((text, manifest.exit_status))
}
