//! The `slocckit` command line, as a library so it can be driven in-process.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use slocckit::catalog::{catalog_state, parse_named, CATALOG};
use slocckit::classifier::{compare, emit_tables, genuine_entanglement, Classification, ClassifyError, Confidence};
use slocckit::config::{ExactMode, OutputFormat, RunConfig, ENV_TOL_CLUSTER, ENV_TOL_RANK};
use slocckit::fuzz::run_fuzz;
use slocckit::ket::{parse_state, KetError};
use slocckit::partitions::{eta, partition_count, spectrum_type_count, tri_even_count};
use slocckit::tensor::{QubitSplit, StateVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DIAGNOSTIC: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "slocckit", version, about = "SLOCC invariants of 4n-qubit pure states")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Exit with status 1 when any result is LOW_CONFIDENCE.
    #[arg(long, global = true)]
    strict: bool,
    /// Skip exact arithmetic even for Gaussian-rational input.
    #[arg(long, global = true)]
    force_float: bool,
    /// Relative tolerance for numerical rank decisions.
    #[arg(long, global = true, env = ENV_TOL_RANK, value_parser = positive_f64)]
    tol_rank: Option<f64>,
    /// Relative tolerance for grouping eigenvalues.
    #[arg(long, global = true, env = ENV_TOL_CLUSTER, value_parser = positive_f64)]
    tol_cluster: Option<f64>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute Ξ and ϑ for a state.
    Classify {
        state: String,
        /// Row qubits of the coefficient matrix, e.g. "1,3" (default: first half).
        #[arg(long)]
        split: Option<String>,
    },
    /// Decide whether two states are provably SLOCC-inequivalent.
    Compare {
        first: String,
        second: String,
        #[arg(long)]
        split: Option<String>,
    },
    /// Check whether a four-qubit state is provably genuinely entangled.
    Detect { state: String },
    /// Print the spectrum-type and family tables.
    Tables {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
        n: u32,
    },
    /// Print partition counts for 4n qubits.
    Counts {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=3))]
        n: u32,
    },
    /// Check label invariance under random invertible local operators.
    Fuzz {
        state: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// List the named states.
    Catalog,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// Errors that abort a command.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<KetError> for Failure {
    fn from(e: KetError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Numerical(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// Inline expression, `@file`, or catalog name.
pub fn read_state(input: &str) -> Result<StateVector, String> {
    let text = match input.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?,
        None => input.to_string(),
    };
    let text = text.trim();
    let parsed = match parse_named(text) {
        Ok(Some(spec)) => catalog_state(&spec),
        Ok(None) => parse_state(text),
        Err(KetError::UnknownName(name)) if text.contains('|') => {
            let _ = name;
            parse_state(text)
        }
        Err(e) => Err(e),
    };
    parsed.map_err(|e| e.to_string())
}

fn config_from(g: &GlobalOpts) -> RunConfig {
    let mut cfg = RunConfig { seed: g.seed, ..RunConfig::default() };
    if let Some(t) = g.tol_rank {
        cfg.tol_rank = t;
    }
    if let Some(t) = g.tol_cluster {
        cfg.tol_cluster = t;
    }
    if g.force_float {
        cfg.exact_mode = ExactMode::ForceFloat;
    }
    cfg.output = if g.json { OutputFormat::Json } else { OutputFormat::Text };
    cfg
}

fn split_for(text: Option<&str>, state: &StateVector) -> Result<Option<QubitSplit>, Failure> {
    text.map(|s| QubitSplit::parse(s, state.num_qubits()).map_err(|e| Failure::Usage(e.to_string()))).transpose()
}

fn low(c: &Classification) -> bool {
    c.confidence == Confidence::LowConfidence
}

/// Runs the command line (including the program name in `argv[0]`).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: rendered, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: rendered },
            };
        }
    };
    let cfg = config_from(&cli.global);
    match dispatch(&cli, &cfg) {
        Ok((stdout, flagged)) => {
            let code = if flagged { EXIT_DIAGNOSTIC } else { EXIT_OK };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(Failure::Usage(msg)) => Outcome::usage(msg),
        Err(Failure::Runtime(msg)) => Outcome { code: EXIT_DIAGNOSTIC, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

/// Output text plus whether the result should exit with the diagnostic status.
fn dispatch(cli: &Cli, cfg: &RunConfig) -> Result<(String, bool), Failure> {
    let json = cli.global.json;
    let strict = cli.global.strict;
    let state = |s: &str| read_state(s).map_err(Failure::Usage);
    match &cli.command {
        Command::Classify { state: input, split } => {
            let s = state(input)?;
            let split = split_for(split.as_deref(), &s)?;
            let c = slocckit::classify_with(&s, split.as_ref(), cfg)?;
            let out = if json { format!("{}\n", c.to_json_string()) } else { c.render_text() };
            Ok((out, strict && low(&c)))
        }
        Command::Compare { first, second, split } => {
            let (a, b) = (state(first)?, state(second)?);
            let split = split_for(split.as_deref(), &a)?;
            let v = compare(&a, &b, split.as_ref(), cfg)?;
            let out = if json {
                let value = json!({
                    "verdict": v.verdict,
                    "witness": v.witness,
                    "left": v.left.to_json(),
                    "right": v.right.to_json(),
                });
                format!("{value}\n")
            } else {
                format!(
                    "{} (witness: {})\n  first:  Ξ = {}  ϑ = {}  [{}]\n  second: Ξ = {}  ϑ = {}  [{}]\n",
                    v.verdict, v.witness, v.left.xi, v.left.theta, v.left.confidence, v.right.xi, v.right.theta, v.right.confidence
                )
            };
            Ok((out, strict && (low(&v.left) || low(&v.right))))
        }
        Command::Detect { state: input } => {
            let s = state(input)?;
            let (verdict, c) = genuine_entanglement(&s, None, cfg)?;
            let out = if json {
                format!("{}\n", json!({ "verdict": verdict, "classification": c.to_json() }))
            } else {
                format!("{verdict}\n  ϑ = {}  [{}]\n", c.theta, c.confidence)
            };
            Ok((out, strict && low(&c)))
        }
        Command::Tables { n } => {
            let report = emit_tables(*n, cfg)?;
            let out = if json {
                let rows: Vec<_> = report
                    .rows
                    .iter()
                    .map(|r| {
                        json!({
                            "xi": r.xi.to_string(),
                            "product_mark": r.product_mark,
                            "families": r.families.iter().map(|f| json!({
                                "theta": f.theta.to_string(),
                                "product_mark": f.product_mark,
                            })).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                format!("{}\n", json!({ "n": n, "spectrum_types": report.spectrum_count(), "families": report.family_count(), "rows": rows }))
            } else {
                report.to_string()
            };
            Ok((out, false))
        }
        Command::Counts { n } => Ok((counts(*n, json), false)),
        Command::Fuzz { state: input, trials } => {
            let s = state(input)?;
            let reports = run_fuzz(&s, cfg.seed, *trials, cfg)?;
            let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
            let worst_ratio = reports.iter().map(|r| r.max_spectral_error).fold(0.0, f64::max);
            let worst_orth = reports.iter().map(|r| r.appendix_a.max_deviation()).fold(0.0, f64::max);
            let out = if json {
                format!(
                    "{}\n",
                    json!({
                        "trials": reports.len(),
                        "passed": reports.len() - failed.len(),
                        "max_spectral_error": worst_ratio,
                        "max_orthogonality_residual": worst_orth,
                        "failures": failed.iter().map(|r| json!({"seed": r.seed, "failures": r.failures})).collect::<Vec<_>>(),
                    })
                )
            } else {
                let mut s = format!(
                    "{}/{} trials passed (seeds {}..{})\nworst √(gh) mismatch: {worst_ratio:.3e}\nworst orthogonality residual: {worst_orth:.3e}\n",
                    reports.len() - failed.len(),
                    reports.len(),
                    cfg.seed,
                    cfg.seed.wrapping_add(*trials as u64),
                );
                for r in &failed {
                    let _ = writeln!(s, "seed {}: {}", r.seed, r.failures.join("; "));
                }
                s
            };
            Ok((out, !failed.is_empty()))
        }
        Command::Catalog => {
            let out = if json {
                let entries: Vec<_> = CATALOG
                    .iter()
                    .map(|e| json!({ "name": e.name, "parameters": e.parameters, "definition": e.definition }))
                    .collect();
                format!("{}\n", serde_json::Value::Array(entries))
            } else {
                let mut s = String::new();
                for e in CATALOG {
                    let name = if e.parameters.is_empty() { e.name.to_string() } else { format!("{}({})", e.name, e.parameters.join(", ")) };
                    let _ = writeln!(s, "{name:<28} {}", e.definition);
                }
                s
            };
            Ok((out, false))
        }
    }
}

fn counts(n: u32, json: bool) -> String {
    let half = 1usize << (2 * n);
    let p_row: Vec<u64> = (0..=half).map(partition_count).collect();
    let p_star: Vec<u64> = (0..=half).map(|k| tri_even_count(2 * k).expect("even")).collect();
    let groups = spectrum_type_count(n);
    let eta = eta(n);
    let families = &eta - 1u32;
    if json {
        return format!(
            "{}\n",
            json!({
                "n": n,
                "P": p_row,
                "P_star_even": p_star,
                "sum_P": groups,
                "eta": eta.to_string(),
                "families": families.to_string(),
            })
        );
    }
    let row = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    format!(
        "P(0..{half}):    {}\nP*(0..{}, even): {}\nΣP = {groups}, η = {eta}, η−1 = {families}\n",
        row(&p_row),
        2 * half,
        row(&p_star),
    )
}
