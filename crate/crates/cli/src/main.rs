//! `ave`: solve, analyze, generate and compare absolute value equations
//! stored as JSON problem files.

mod analyze;
mod compare;
mod files;
mod generate;
mod solve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use analyze::RhoMethod;
use compare::Suite;
use generate::Rhs;
use solve::Method;

#[derive(Debug, Parser)]
#[command(
    name = "ave",
    version,
    about = "Solvers for absolute value equations z - A|z| = b"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a problem file and write a report.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "sge")]
        method: Method,
        /// Newton start: `b`, `plus`, `minus` or a sign string such as `+-+`.
        #[arg(long, default_value = "b", allow_hyphen_values = true)]
        start: String,
        #[arg(long)]
        max_iter: Option<usize>,
        /// Residual acceptance threshold, relative to the data size.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report conditions, spectral radii and determinant signs of `A`.
    Analyze {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        rho: RhoMethod,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a random or fixed instance as a problem file.
    Generate {
        #[arg(long)]
        class: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "from-random-z")]
        rhs: Rhs,
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
        /// Off-diagonal value for `paper-newton`.
        #[arg(long, default_value_t = 0.625)]
        a: f64,
        /// Target `‖A‖∞` for `unconstrained`.
        #[arg(long)]
        nu: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run both solvers and the oracle on a set of instances.
    #[command(group(ArgGroup::new("source").required(true).args(["dir", "suite"])))]
    Compare {
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Solve {
            input,
            method,
            start,
            max_iter,
            tol,
            out,
        } => solve::cmd_solve(solve::SolveArgs {
            input,
            method: *method,
            start,
            max_iter: *max_iter,
            tol: *tol,
            out: out.as_deref(),
        }),
        Command::Analyze { input, rho, out } => analyze::cmd_analyze(input, *rho, out.as_deref()),
        Command::Generate {
            class,
            n,
            seed,
            rhs,
            eps,
            a,
            nu,
            out,
        } => generate::cmd_generate(generate::GenerateArgs {
            class,
            n: *n,
            seed: *seed,
            rhs: *rhs,
            eps: *eps,
            a: *a,
            nu: *nu,
            out: out.as_deref(),
        }),
        Command::Compare { dir, suite, out } => {
            compare::cmd_compare(dir.as_deref(), *suite, out.as_deref())
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.0);
            ExitCode::from(1)
        }
    }
}
