//! Thin command-line binary over [`auglag::cli`].

use std::path::PathBuf;
use std::process::exit;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use auglag::cli::{cmd_compare, cmd_solve, cmd_sweep, resolve_config, CliOverrides};

#[derive(Parser)]
#[command(
    name = "auglag",
    version,
    about = "Augmented Lagrangian and penalty-form solvers for small equality-constrained problems"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one solver and write its per-iteration trace as CSV
    Solve(CommonArgs),
    /// Benchmark the direct penalty solve against the modified scheme
    Compare(CommonArgs),
    /// Continuation sweep driving omega_e toward zero with warm starts
    Sweep(SweepArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Catalog problem (qp1d, qp_overdet, rosenbrock_circle, toy_ocp) or
    /// path to a QP data file
    #[arg(long)]
    problem: Option<String>,
    /// Solver: alm, malm, malm-root, or penalty
    #[arg(long)]
    method: Option<String>,
    /// Proximal weight (required by alm/malm/malm-root)
    #[arg(long)]
    omega: Option<f64>,
    /// Penalty-form weight (0 targets the equality-constrained problem)
    #[arg(long = "omega-e")]
    omega_e: Option<f64>,
    /// Outer convergence tolerance on the residual
    #[arg(long = "outer-tol")]
    outer_tol: Option<f64>,
    /// Outer iteration cap
    #[arg(long = "max-outer")]
    max_outer: Option<usize>,
    /// Output CSV path (default trace.csv / compare.csv / sweep.csv)
    #[arg(long)]
    out: Option<PathBuf>,
    /// TOML config file; flags given here override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated start point (defaults to the problem's start)
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    x0: Option<Vec<f64>>,
    /// Comma-separated initial multipliers (default zeros)
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    lambda0: Option<Vec<f64>>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated strictly decreasing omega_e values (0 allowed last)
    #[arg(long, value_delimiter = ',')]
    schedule: Option<Vec<f64>>,
}

fn overrides(a: CommonArgs, schedule: Option<Vec<f64>>) -> (Option<PathBuf>, CliOverrides) {
    (
        a.config,
        CliOverrides {
            problem: a.problem,
            method: a.method,
            omega: a.omega,
            omega_e: a.omega_e,
            outer_tol: a.outer_tol,
            max_outer: a.max_outer,
            out: a.out,
            x0: a.x0,
            lambda0: a.lambda0,
            schedule,
        },
    )
}

fn run(cli: Cli) -> auglag::Result<i32> {
    match cli.cmd {
        Cmd::Solve(a) => {
            let (config, ov) = overrides(a, None);
            let cfg = resolve_config(config.as_deref(), &ov)?;
            let outcome = cmd_solve(&cfg)?;
            println!("{}", outcome.summary);
            println!("trace written to {}", outcome.out_path.display());
            Ok(outcome.exit_code)
        }
        Cmd::Compare(a) => {
            let (config, ov) = overrides(a, None);
            let cfg = resolve_config(config.as_deref(), &ov)?;
            let outcome = cmd_compare(&cfg)?;
            print!("{}", outcome.table);
            println!("table written to {}", outcome.out_path.display());
            Ok(outcome.exit_code)
        }
        Cmd::Sweep(a) => {
            let (config, ov) = overrides(a.common, a.schedule);
            let cfg = resolve_config(config.as_deref(), &ov)?;
            let outcome = cmd_sweep(&cfg)?;
            print!("{}", outcome.table);
            println!("sweep written to {}", outcome.out_path.display());
            Ok(outcome.exit_code)
        }
    }
}

struct StderrLogger;

impl log::Log for StderrLogger {
    fn enabled(&self, metadata: &log::Metadata) -> bool {
        metadata.level() <= log::Level::Warn
    }
    fn log(&self, record: &log::Record) {
        if self.enabled(record.metadata()) {
            eprintln!("[{}] {}", record.level(), record.args());
        }
    }
    fn flush(&self) {}
}

static LOGGER: StderrLogger = StderrLogger;

fn main() {
    if log::set_logger(&LOGGER).is_ok() {
        log::set_max_level(log::LevelFilter::Warn);
    }
    // Keep exit codes meaningful: clap's default usage-error code (2) is
    // reserved for iteration-cap exits, so argument errors map to 1.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            exit(0);
        }
        Err(e) => {
            eprintln!("{e}");
            exit(1);
        }
    };
    match run(cli) {
        Ok(code) => exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            exit(1);
        }
    }
}
