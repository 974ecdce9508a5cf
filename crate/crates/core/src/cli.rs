//! Batch driver behind the `ccrlab` binary.
//!
//! Every subcommand accepts `--config FILE`: a JSON object whose keys are
//! the subcommand's long flag names (with `_` for `-`). Values in the file
//! override flags, and unknown keys are rejected. Exit codes: `0` all
//! checks pass, `1` a numeric check failed, `2` usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ccr::algebra::AlgebraElement;
use crate::ccr::expr::parse_expr;
use crate::ccr::state::{omega, CovarianceTable};
use crate::error::{Error, Result};
use crate::krein::{family, os_gram, signature, FamilySpec, Grid};
use crate::report::{Entry, Provenance, Report, ReportBuilder};
use crate::scalar::parse_rational;
use crate::schwinger::{evaluate_request, McMode, McRequest, DEFAULT_SEED};
use crate::suite::{run_suite, SuiteMode, LONG_ENV};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    /// One PASS/FAIL line per entry.
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "ccrlab", version, about = "Exact and Monte Carlo checks for the CCR algebra with free evolution")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Exact ω value and normal-ordered form of an expression.
    Moments(MomentsArgs),
    /// Monte Carlo estimate next to its analytic target.
    Mc(McArgs),
    /// Signature and spectrum of a Gram matrix.
    Gram(GramArgs),
    /// The full acceptance matrix.
    Suite(SuiteArgs),
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentsArgs {
    /// Expression in q, p, q', p', i and rationals, e.g. "q p q p".
    #[arg(long, allow_hyphen_values = true)]
    pub expr: Option<String>,
    /// The constant c in ω(q²) = c.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub c: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McArgs {
    /// indefinite, krein, weyl or characteristic.
    #[arg(long, default_value = "indefinite")]
    pub mode: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub taus: Vec<f64>,
    /// Weyl charges (mode weyl).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alphas: Vec<f64>,
    /// Krein scale (mode krein).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Test-function values at the times (mode characteristic).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub values: Vec<f64>,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long, default_value_t = 65_536)]
    pub chunk: u64,
    /// Quadrature weight of the test function (mode characteristic).
    #[arg(long, default_value_t = 1.0)]
    pub step: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GramKind {
    /// Full indefinite Euclidean product.
    Nelson,
    /// Reflected product on positive-time functions.
    Os,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GramArgs {
    #[arg(long, value_enum, default_value_t = GramKind::Nelson)]
    pub kind: GramKind,
    /// meanzero:N, bumps:N or possupport:N.
    #[arg(long)]
    pub family: String,
    /// start:stop:step.
    #[arg(long, default_value = "-5:5:0.1", allow_hyphen_values = true)]
    pub grid: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Constant c of the OS product.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteArgs {
    /// 100× fewer samples, 5σ tolerances.
    #[arg(long)]
    pub quick: bool,
    /// Full-size samples in the 100-seed binomial check (also CCRLAB_LONG=1).
    #[arg(long)]
    pub long: bool,
    /// Same as --format json.
    #[arg(long)]
    pub json: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

/// A subcommand with its config file folded in.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub output: Option<PathBuf>,
}

fn overlay<T: Serialize + DeserializeOwned>(args: &T, path: &Option<PathBuf>) -> Result<T> {
    let Some(path) = path else {
        return serde_json::from_value(serde_json::to_value(args).expect("args serialize"))
            .map_err(|e| Error::InvalidInput(e.to_string()));
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let file: Value = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let Value::Object(file) = file else {
        return Err(Error::InvalidInput(format!("{}: expected a JSON object", path.display())));
    };
    let Value::Object(mut base) = serde_json::to_value(args).expect("args serialize") else {
        unreachable!("argument structs serialize to objects")
    };
    base.extend(file);
    serde_json::from_value(Value::Object(base)).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

impl RunConfig {
    pub fn resolve(command: Command) -> Result<Self> {
        Ok(match command {
            Command::Moments(a) => {
                let m = overlay(&a, &a.config)?;
                Self { format: m.format, output: m.output.clone(), command: Command::Moments(m) }
            }
            Command::Mc(a) => {
                let m = overlay(&a, &a.config)?;
                Self { format: m.format, output: m.output.clone(), command: Command::Mc(m) }
            }
            Command::Gram(a) => {
                let m = overlay(&a, &a.config)?;
                Self { format: m.format, output: m.output.clone(), command: Command::Gram(m) }
            }
            Command::Suite(a) => {
                let m = overlay(&a, &a.config)?;
                let format = if m.json { Format::Json } else { m.format };
                Self { format, output: m.output.clone(), command: Command::Suite(m) }
            }
        })
    }
}

pub fn run_moments(expr: &str, c: &str) -> Result<Report> {
    let c_value = parse_rational(c)?;
    let e: AlgebraElement = parse_expr(expr)?;
    let table = CovarianceTable::new(c_value.clone());
    let value = omega(&e, &table);
    let mut b = ReportBuilder::new("moments", serde_json::json!({ "expr": expr, "c": c }));
    b.push(Entry::info("omega", value.to_string(), Provenance::ExactSymbolic));
    b.push(Entry::info("normal_order", e.to_string(), Provenance::ExactSymbolic));
    Ok(b.finish())
}

pub fn run_mc(req: &McRequest) -> Result<Report> {
    let r = evaluate_request(req)?;
    let mut b = ReportBuilder::new("mc", req);
    b.push(Entry::check("estimate", r.mean, r.analytic, Some(3.0), r.pass, Provenance::MonteCarlo).with_stderr(r.stderr));
    if req.mode == McMode::Characteristic {
        b.push(Entry::info("estimate_im", r.mean_im, Provenance::MonteCarlo).with_stderr(r.stderr));
    }
    b.push(Entry::info("analytic", r.analytic, Provenance::Analytic));
    b.push(Entry::info("sigma_distance", r.sigma_distance, Provenance::MonteCarlo));
    b.push(Entry::info("samples", r.samples, Provenance::MonteCarlo));
    Ok(b.finish())
}

pub fn run_gram(kind: GramKind, family_spec: &str, grid_spec: &str, seed: u64, c: f64) -> Result<Report> {
    let spec: FamilySpec = family_spec.parse()?;
    let grid = std::sync::Arc::new(Grid::parse(grid_spec)?);
    let fam = family(spec, &grid, seed)?;
    let gram = match kind {
        GramKind::Nelson => signature(&fam)?,
        GramKind::Os => os_gram(&fam, c)?,
    };
    let s = gram.signature();
    let sv = gram.singular_values();
    let mut b = ReportBuilder::new(
        "gram",
        serde_json::json!({ "kind": kind, "family": family_spec, "grid": grid_spec, "seed": seed, "c": c }),
    );
    b.push(Entry::info("n_plus", s.positive, Provenance::Analytic));
    b.push(Entry::info("n_minus", s.negative, Provenance::Analytic));
    b.push(Entry::info("n_zero", s.zero, Provenance::Analytic));
    b.push(Entry::info("rank", s.rank(), Provenance::Analytic));
    b.push(Entry::info("eigenvalues", gram.eigenvalues(), Provenance::Analytic));
    let ratios: Vec<f64> = sv.iter().map(|x| x / sv[0]).collect();
    b.push(Entry::info("singular_value_ratios", ratios, Provenance::Analytic));
    Ok(b.finish())
}

fn mc_request(a: &McArgs) -> Result<McRequest> {
    let mode: McMode = a.mode.parse()?;
    let nonempty = |v: &Vec<f64>| (!v.is_empty()).then(|| v.clone());
    Ok(McRequest {
        mode,
        taus: a.taus.clone(),
        alphas: nonempty(&a.alphas),
        alpha: a.alpha,
        values: nonempty(&a.values),
        samples: a.samples,
        seed: a.seed,
        c: a.c,
        chunk: a.chunk,
        step: a.step,
    })
}

pub fn execute(cfg: &RunConfig) -> Result<Report> {
    match &cfg.command {
        Command::Moments(a) => {
            let expr = a.expr.as_deref().ok_or_else(|| Error::InvalidInput("--expr is required".into()))?;
            run_moments(expr, &a.c)
        }
        Command::Mc(a) => run_mc(&mc_request(a)?),
        Command::Gram(a) => run_gram(a.kind, &a.family, &a.grid, a.seed, a.c),
        Command::Suite(a) => {
            let env_long = std::env::var_os(LONG_ENV).is_some_and(|v| v != "0" && !v.is_empty());
            Ok(run_suite(&SuiteMode {
                quick: a.quick,
                long: a.long || env_long,
                seed: a.seed,
            }))
        }
    }
}

pub fn render(report: &Report, format: Format) -> Result<Vec<u8>> {
    Ok(match format {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf)?;
            buf
        }
        Format::Text => {
            let mut lines = report.summary_lines();
            let failed = report.results.iter().filter(|e| !e.pass).count();
            lines.push(format!(
                "{}: {} of {} passed in {:.2}s",
                report.command,
                report.results.len() - failed,
                report.results.len(),
                report.wall_clock_seconds
            ));
            let mut s = lines.join("\n");
            s.push('\n');
            s.into_bytes()
        }
    })
}

/// Parses `args`, runs the subcommand, writes the report and returns
/// the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let outcome = RunConfig::resolve(cli.command).and_then(|cfg| {
        let report = execute(&cfg)?;
        let bytes = render(&report, cfg.format)?;
        match &cfg.output {
            Some(path) => std::fs::write(path, &bytes)
                .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?,
            None => {
                let _ = std::io::stdout().write_all(&bytes);
            }
        }
        Ok(report.pass)
    });
    match outcome {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_values() {
        let r = run_moments("q p q p", "0").unwrap();
        assert_eq!(r.results[0].value, "0");
        let r = run_moments("q p", "0").unwrap();
        assert_eq!(r.results[0].value, "1/2 i");
        let r = run_moments("q q", "1").unwrap();
        assert_eq!(r.results[0].value, "1");
        assert!(run_moments("q + x", "0").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(main_with_args(["ccrlab", "bogus"]), EXIT_USAGE);
        assert_eq!(main_with_args(["ccrlab", "mc", "--mode", "nope", "--taus", "1"]), EXIT_USAGE);
        assert_eq!(main_with_args(["ccrlab", "mc", "--taus", "1,1", "--c", "1"]), EXIT_USAGE);
    }
}
