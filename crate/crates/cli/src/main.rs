mod example;
mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use degsdp_core::bounds::{complexity_estimate, lagrange_size, StratumBounds};
use degsdp_core::oracle::{self, OracleVerdict};
use degsdp_core::pencil::{
    parse_instance, parse_matrix, parse_point, psd_check_algebraic, ObjectiveForm, SymmetricPencil,
};
use degsdp_core::solver::{degenerate_sdp, SolveConfig, SolveStatus, WORKERS_ENV};

pub mod exit {
    pub const OK: u8 = 0;
    pub const INFEASIBLE_POINT: u8 = 1;
    pub const ERROR: u8 = 2;
    pub const UNBOUNDED: u8 = 3;
    pub const EMPTY_OR_UNBOUNDED: u8 = 4;
    pub const GENERICITY: u8 = 5;
    pub const TIMEOUT: u8 = 6;
}

#[derive(Parser)]
#[command(name = "degsdp", version, about = "Exact SDP solving by symbolic perturbation homotopy")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
#[group(multiple = false)]
struct Format {
    /// Machine-readable output (default).
    #[arg(long)]
    json: bool,
    /// Human-readable output.
    #[arg(long)]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Minimize the objective over the spectrahedron of an instance.
    Solve {
        instance: PathBuf,
        /// Explicit perturbation matrix B (disables reseeding).
        #[arg(long)]
        perturbation_file: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-stratum time budget in seconds.
        #[arg(long, default_value_t = 60.0)]
        budget: f64,
        /// Highest rank stratum visited.
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long, default_value_t = 5)]
        reseeds: usize,
        /// Opt into a small explicit perturbation of the objective on genericity failure.
        #[arg(long)]
        allow_objective_perturbation: bool,
        /// Also compute the (t, u) form of every stratum curve.
        #[arg(long)]
        curve_params: bool,
        /// Worker threads (overrides the environment).
        #[arg(long)]
        workers: Option<usize>,
        /// Leave per-stratum timings out of the report.
        #[arg(long)]
        no_timings: bool,
        /// Write the report here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        format: Format,
    },
    /// Check a point against an instance exactly.
    Verify {
        instance: PathBuf,
        point: PathBuf,
        #[command(flatten)]
        format: Format,
    },
    /// Degree and size bounds per rank stratum.
    Bounds {
        /// Take m and n from an instance.
        instance: Option<PathBuf>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        format: Format,
    },
    /// Floating-point estimate of the minimum (not certified).
    Oracle {
        instance: PathBuf,
        #[command(flatten)]
        format: Format,
    },
    /// Walk through the two-by-two example with a single feasible point.
    Example {
        #[command(flatten)]
        format: Format,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_instance(path: &Path) -> Result<(SymmetricPencil, ObjectiveForm)> {
    parse_instance(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn emit(format: Format, value: &Value, text: impl FnOnce() -> String, output: Option<&Path>) -> Result<()> {
    let body = if format.text { text() } else { serde_json::to_string_pretty(value)? + "\n" };
    match output {
        Some(p) => fs::write(p, body).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

pub fn status_code(status: &SolveStatus) -> u8 {
    match status {
        SolveStatus::Solved | SolveStatus::ZeroPointVertex => exit::OK,
        SolveStatus::UnboundedBelow => exit::UNBOUNDED,
        SolveStatus::EmptyFeasible => exit::EMPTY_OR_UNBOUNDED,
        SolveStatus::GenericityFailure => exit::GENERICITY,
        SolveStatus::StratumTimeout(_) => exit::TIMEOUT,
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve {
            instance,
            perturbation_file,
            seed,
            budget,
            max_rank,
            reseeds,
            allow_objective_perturbation,
            curve_params,
            workers,
            no_timings,
            output,
            format,
        } => {
            if !(budget > 0.0) {
                bail!("--budget must be positive");
            }
            let (pencil, objective) = load_instance(&instance)?;
            let perturbation = match &perturbation_file {
                Some(p) => Some(parse_matrix(&read(p)?).with_context(|| format!("{}", p.display()))?),
                None => None,
            };
            let config = SolveConfig {
                seed,
                perturbation,
                stratum_budget: Duration::from_secs_f64(budget),
                max_rank,
                allow_objective_perturbation,
                reseeds,
                workers,
                curve_params,
                ..SolveConfig::default()
            };
            let report = degenerate_sdp(&pencil, &objective, &config)?;
            emit(format, &report.to_json(!no_timings), || render::report(&report), output.as_deref())?;
            Ok(status_code(&report.status))
        }
        Command::Verify { instance, point, format } => {
            let (pencil, objective) = load_instance(&instance)?;
            let point = parse_point(&read(&point)?).with_context(|| format!("{}", point.display()))?;
            if point.dim() != pencil.n() {
                bail!("point has {} coordinates, instance has {} variables", point.dim(), pencil.n());
            }
            let cert = psd_check_algebraic(&pencil, &point)?;
            let value = point.linear_value(objective.coeffs());
            let doc = json!({
                "feasible": cert.is_psd(),
                "certificate": cert,
                "objective": value.to_string(),
                "objective_approx": value.to_f64(),
            });
            emit(
                format,
                &doc,
                || {
                    format!(
                        "feasible: {}\nverdict: {:?}\nrank: {}\nobjective: {} (~{:.12})\n",
                        cert.is_psd(),
                        cert.verdict,
                        cert.rank,
                        value,
                        value.to_f64()
                    )
                },
                None,
            )?;
            Ok(if cert.is_psd() { exit::OK } else { exit::INFEASIBLE_POINT })
        }
        Command::Bounds { instance, m, n, format } => {
            let (m, n) = match (&instance, m, n) {
                (Some(path), None, None) => {
                    let (p, _) = load_instance(path)?;
                    (p.m(), p.n())
                }
                (None, Some(m), Some(n)) => (m, n),
                _ => bail!("give either an instance or both --m and --n"),
            };
            let rows: Vec<StratumBounds> = if n == 0 {
                Vec::new()
            } else {
                (1..m).map(|r| StratumBounds::new(m, n, r)).collect::<Result<_, _>>()?
            };
            let size_ok = (1..m).all(|r| lagrange_size(m, n, r) <= n + 2 * m * m);
            let estimate = complexity_estimate(m, n).ok();
            let doc = json!({
                "m": m,
                "n": n,
                "strata": rows,
                "size_within_n_plus_2m2": size_ok,
                "complexity_estimate": estimate.as_ref().map(|e| e.to_string()),
            });
            emit(format, &doc, || render::bounds(m, n, &rows, size_ok, estimate.as_ref()), None)?;
            Ok(exit::OK)
        }
        Command::Oracle { instance, format } => {
            let (pencil, objective) = load_instance(&instance)?;
            let est = oracle::estimate(&pencil, &objective)?;
            let doc = json!({"certified": false, "estimate": est});
            emit(format, &doc, || render::oracle(&est), None)?;
            Ok(match est.verdict {
                OracleVerdict::Bounded => exit::OK,
                OracleVerdict::PossiblyUnbounded => exit::UNBOUNDED,
                OracleVerdict::NoFeasiblePoint => exit::EMPTY_OR_UNBOUNDED,
            })
        }
        Command::Example { format } => {
            let walk = example::walkthrough()?;
            emit(format, &walk.to_json(), || walk.to_text(), None)?;
            Ok(exit::OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        if v.parse::<usize>().is_err() {
            eprintln!("warning: ignoring {WORKERS_ENV}={v}");
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::ERROR)
        }
    }
}
