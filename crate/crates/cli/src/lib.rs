//! Command-line surface for `hermdiag`.
//!
//! [`Cli`] is the clap definition; [`RunConfig`] is the validated form that
//! [`run_command`] executes. Data goes to `--out` (or stdout when absent),
//! check summaries go to stdout.

mod examples;
mod selector;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hermdiag::classify::q_reality_table;
use hermdiag::diffop::{alpha_zero_limit_check, build_operator, verify_diagonal_action};
use hermdiag::hermite::{check_hermite_identities, check_product_formula, HermiteParam};
use hermdiag::jensen::{check_gslem, check_shifty, histogram_csv, ratio_csv, ratio_histogram, ratio_sequence, GammaSeq};
use hermdiag::laguerre::{verify_laguerre_eigen, LaguerreParam};
use hermdiag::rat::{parse_rat, to_exact_string};
use hermdiag::{CheckReport, Rat};
use serde::Serialize;

pub use examples::{run_example, ExampleId};
pub use selector::{parse_factored, parse_named, SeqSelector};

/// Environment variable overriding [`DEFAULT_KMAX_CAP`].
pub const KMAX_CAP_ENV: &str = "HERMDIAG_KMAX_CAP";
pub const DEFAULT_KMAX_CAP: usize = 400;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] hermdiag::Error),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) | CliError::Core(_) => "invalid_config",
            CliError::Io { .. } => "io",
        }
    }

    /// Machine-readable form for stderr.
    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self.kind(), "message": self.to_string() }).to_string()
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "hermdiag", version, about = "Exact Hermite-diagonal operator coefficients and multiplier-sequence checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficient polynomials Q_{k,p} for k ≤ kmax.
    Qpoly(DataArgs),
    /// Real-rootedness of each Q_{k,p}.
    Reality(DataArgs),
    /// Ratios g_k/g_{k-1} of the reversed Jensen values, optionally binned.
    Ratios {
        #[command(flatten)]
        data: DataArgs,
        /// Number of equal-width bins over the defined ratio values.
        #[arg(long)]
        histogram: Option<usize>,
        /// Write the histogram CSV here instead of after the ratio data.
        #[arg(long)]
        hist_out: Option<PathBuf>,
    },
    /// Identity suites; exit status 1 on any failure.
    Verify {
        #[command(flatten)]
        seq: OptSeqArgs,
        #[arg(long, default_value = "1")]
        alpha: String,
        /// Largest degree checked.
        #[arg(long, default_value_t = 10)]
        kmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Packaged reproductions with PASS/FAIL lines.
    Examples {
        #[arg(long, value_enum, default_value = "all")]
        id: ExampleId,
    },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct SeqArgs {
    /// Named sequence: const1, linear(a), example311, besselJ0, exp-half-cosh, geom-factorial(r).
    #[arg(long)]
    pub seq: Option<String>,
    /// Factored entire function, e.g. "c=1;m=0;sigma=1/2;zeros=1,1".
    #[arg(long)]
    pub factored: Option<String>,
    /// JSON file {"gamma": ["p/q", ...], "tail": "p/q"}.
    #[arg(long)]
    pub seq_file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
#[group(required = false, multiple = false)]
pub struct OptSeqArgs {
    #[arg(long)]
    pub seq: Option<String>,
    #[arg(long)]
    pub factored: Option<String>,
    #[arg(long)]
    pub seq_file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct DataArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    #[arg(long, default_value = "1")]
    pub alpha: String,
    #[arg(long, default_value_t = 10)]
    pub kmax: usize,
    /// Shift p of the sequence.
    #[arg(short = 'p', long = "shift", default_value_t = 0)]
    pub p: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Qpoly,
    Reality,
    Ratios,
    Verify,
    Examples,
}

/// A validated invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub seq: Option<SeqSelector>,
    pub alpha: HermiteParam,
    pub k_max: usize,
    pub p: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub histogram: Option<usize>,
    pub hist_out: Option<PathBuf>,
    pub example: ExampleId,
}

impl RunConfig {
    fn base(command: CommandKind) -> Self {
        RunConfig {
            command,
            seq: None,
            alpha: HermiteParam::new(Rat::from_integer(1.into())).expect("positive"),
            k_max: 10,
            p: 0,
            out: None,
            format: Format::Csv,
            histogram: None,
            hist_out: None,
            example: ExampleId::All,
        }
    }

    pub fn from_cli(cli: Cli, kmax_cap: usize) -> CliResult<Self> {
        let cfg = match cli.command {
            Command::Qpoly(d) => Self::from_data(CommandKind::Qpoly, d)?,
            Command::Reality(d) => Self::from_data(CommandKind::Reality, d)?,
            Command::Ratios { data, histogram, hist_out } => {
                let mut cfg = Self::from_data(CommandKind::Ratios, data)?;
                if histogram == Some(0) {
                    return Err(CliError::Config("--histogram needs at least one bin".into()));
                }
                if hist_out.is_some() && histogram.is_none() {
                    return Err(CliError::Config("--hist-out requires --histogram".into()));
                }
                cfg.histogram = histogram;
                cfg.hist_out = hist_out;
                cfg
            }
            Command::Verify { seq, alpha, kmax, out } => {
                let mut cfg = Self::base(CommandKind::Verify);
                cfg.seq = SeqSelector::from_parts(seq.seq, seq.factored, seq.seq_file)?;
                cfg.alpha = parse_alpha(&alpha)?;
                cfg.k_max = kmax;
                cfg.out = out;
                cfg
            }
            Command::Examples { id } => {
                let mut cfg = Self::base(CommandKind::Examples);
                cfg.example = id;
                cfg
            }
        };
        if cfg.k_max > kmax_cap {
            return Err(CliError::Config(format!("kmax {} exceeds the cap {kmax_cap} (set {KMAX_CAP_ENV})", cfg.k_max)));
        }
        if cfg.command == CommandKind::Ratios && cfg.k_max == 0 {
            return Err(CliError::Config("ratios needs kmax >= 1".into()));
        }
        Ok(cfg)
    }

    fn from_data(command: CommandKind, d: DataArgs) -> CliResult<Self> {
        let mut cfg = Self::base(command);
        cfg.seq = SeqSelector::from_parts(d.seq.seq, d.seq.factored, d.seq.seq_file)?;
        if cfg.seq.is_none() {
            return Err(CliError::Config("exactly one of --seq, --factored, --seq-file is required".into()));
        }
        cfg.alpha = parse_alpha(&d.alpha)?;
        cfg.k_max = d.kmax;
        cfg.p = d.p;
        cfg.out = d.out;
        cfg.format = d.format;
        Ok(cfg)
    }
}

fn parse_alpha(s: &str) -> CliResult<HermiteParam> {
    Ok(HermiteParam::new(parse_rat(s)?)?)
}

/// Hard cap on `kmax` from the environment, falling back to the default.
pub fn kmax_cap_from_env() -> CliResult<usize> {
    match std::env::var(KMAX_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("{KMAX_CAP_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_KMAX_CAP),
    }
}

fn emit(cfg_out: &Option<PathBuf>, data: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match cfg_out {
        Some(path) => fs::write(path, data).map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => stdout
            .write_all(data.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn say(stdout: &mut dyn Write, line: &str) -> CliResult<()> {
    writeln!(stdout, "{line}").map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Runs `cfg`, writing data and summaries. Returns whether every executed check passed.
pub fn run_command(cfg: &RunConfig, stdout: &mut dyn Write) -> CliResult<bool> {
    let seq = cfg.seq.as_ref().map(SeqSelector::resolve).transpose()?;
    match cfg.command {
        CommandKind::Qpoly => {
            let seq = seq.expect("validated");
            let op = build_operator(&cfg.alpha, &seq, cfg.k_max, cfg.p);
            let data = match cfg.format {
                Format::Json => to_json(&op),
                Format::Csv => {
                    let mut s = String::from("k,degree,coeffs\n");
                    for (k, q) in op.coefficients().iter().enumerate() {
                        let deg = q.degree().map(|d| d.to_string()).unwrap_or_default();
                        let coeffs: Vec<String> = q.coeffs().iter().map(to_exact_string).collect();
                        s.push_str(&format!("{k},{deg},{}\n", coeffs.join(" ")));
                    }
                    s
                }
            };
            emit(&cfg.out, &data, stdout)?;
            Ok(true)
        }
        CommandKind::Reality => {
            let seq = seq.expect("validated");
            let table = q_reality_table(&cfg.alpha, &seq, cfg.k_max, cfg.p)?;
            let data = match cfg.format {
                Format::Json => to_json(&table),
                Format::Csv => {
                    let mut s = String::from("k,real_rooted\n");
                    for row in &table.rows {
                        s.push_str(&format!("{},{}\n", row.k, row.real_rooted));
                    }
                    s
                }
            };
            emit(&cfg.out, &data, stdout)?;
            Ok(true)
        }
        CommandKind::Ratios => {
            let seq = seq.expect("validated");
            let entries = ratio_sequence(&seq, cfg.k_max, cfg.p);
            let data = match cfg.format {
                Format::Csv => ratio_csv(&entries),
                Format::Json => {
                    let rows: Vec<serde_json::Value> = entries
                        .iter()
                        .map(|e| serde_json::json!({ "k": e.k, "value": e.value.as_ref().map(to_exact_string) }))
                        .collect();
                    to_json(&rows)
                }
            };
            let hist = cfg.histogram.map(|b| ratio_histogram(&entries, b)).transpose()?;
            match (&hist, &cfg.hist_out) {
                (Some(h), Some(path)) => {
                    emit(&cfg.out, &data, stdout)?;
                    emit(&Some(path.clone()), &histogram_csv(h), stdout)?;
                }
                (Some(h), None) => emit(&cfg.out, &format!("{data}\n{}", histogram_csv(h)), stdout)?,
                (None, _) => emit(&cfg.out, &data, stdout)?,
            }
            Ok(true)
        }
        CommandKind::Verify => {
            let seqs: Vec<(String, GammaSeq)> = match (&cfg.seq, seq) {
                (Some(sel), Some(s)) => vec![(sel.label(), s)],
                _ => vec![
                    ("const1".into(), GammaSeq::constant(Rat::from_integer(1.into()))),
                    ("linear(3)".into(), GammaSeq::linear(Rat::from_integer(3.into()))),
                    ("example311".into(), GammaSeq::example311()),
                    ("besselJ0".into(), GammaSeq::bessel_j0()),
                ],
            };
            let reports = verify_reports(cfg, &seqs)?;
            for (label, r) in &reports {
                say(stdout, &format!("{} [{label}]", r.summary_line()))?;
            }
            if let Some(path) = &cfg.out {
                let json: Vec<serde_json::Value> =
                    reports.iter().map(|(l, r)| serde_json::json!({ "target": l, "report": r })).collect();
                emit(&Some(path.clone()), &to_json(&json), stdout)?;
            }
            Ok(reports.iter().all(|(_, r)| r.passed()))
        }
        CommandKind::Examples => run_example(cfg.example, stdout),
    }
}

fn verify_reports(cfg: &RunConfig, seqs: &[(String, GammaSeq)]) -> CliResult<Vec<(String, CheckReport)>> {
    let n = cfg.k_max;
    let mut out = Vec::new();
    for (label, seq) in seqs {
        out.push((label.clone(), check_gslem(seq, n)));
        out.push((label.clone(), check_shifty(seq, n.min(8), n.min(8))));
        out.push((label.clone(), verify_diagonal_action(&cfg.alpha, seq, n)?));
        out.push((label.clone(), alpha_zero_limit_check(seq, n.min(8))));
    }
    out.push(("random tables".into(), examples::index_reordering_report(100, 9, 29)));
    let alpha_label = format!("alpha={}", cfg.alpha.value());
    out.push((alpha_label.clone(), check_hermite_identities(n, &cfg.alpha)?));
    out.push((alpha_label, check_product_formula(n.min(8), &cfg.alpha)));
    for (alpha, a) in examples::laguerre_grid() {
        let params = LaguerreParam::new(alpha.clone(), a.clone())?;
        out.push((format!("laguerre alpha={alpha} a={a}"), verify_laguerre_eigen(&params, n)));
    }
    Ok(out)
}
