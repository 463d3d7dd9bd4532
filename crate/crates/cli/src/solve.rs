use std::path::Path;
use std::time::Instant;

use ave_core::analysis::condition_profile;
use ave_core::linalg::norm_inf;
use ave_core::newton::{newton_solve, NewtonOptions, Start};
use ave_core::oracle::enumerate_solutions;
use ave_core::problems::AveProblem;
use ave_core::report::{SolveReport, SolveTrace, Status};
use ave_core::sge::{sge_solve, SgeOptions};
use ave_core::signature::Signature;
use ave_core::AveError;
use clap::ValueEnum;

use crate::files::{
    emit, to_json, CliError, CliResult, Pick, ProblemFile, ReportFile, Timings, TraceSummary,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Sge,
    Newton,
    Oracle,
}

/// Parses `b`, `plus`, `minus` or a `+`/`-` string of length `n`.
pub fn parse_start(spec: &str, n: usize) -> CliResult<Start> {
    match spec {
        "b" => Ok(Start::Rhs),
        "plus" => Ok(Start::Signature(Signature::positive(n))),
        "minus" => Ok(Start::Signature(Signature::positive(n).negated())),
        s => {
            let sig: Signature = s.parse().map_err(|e| CliError(format!("--start: {e}")))?;
            if sig.len() != n {
                return Err(CliError(format!(
                    "--start: signature {s:?} has length {}, expected n = {n}",
                    sig.len()
                )));
            }
            Ok(Start::Signature(sig))
        }
    }
}

pub fn status_name(status: Status) -> &'static str {
    match status {
        Status::Converged => "converged",
        Status::CycleDetected => "cycle",
        Status::MaxIterations => "max_iterations",
        Status::SingularSystem => "singular",
    }
}

/// Residual test scaled by the size of the data.
pub fn residual_ok(problem: &AveProblem, z: &[f64], tol: f64) -> (f64, bool) {
    let r = problem.residual(z);
    let scale = 1.0 + problem.a().norm_inf() * norm_inf(z) + norm_inf(problem.b());
    (r, r <= tol * scale)
}

/// Outcome of one solver run, before it is turned into a report.
pub struct Run {
    pub status: String,
    pub z: Option<Vec<f64>>,
    pub iterations: usize,
    pub trace: TraceSummary,
    pub message: Option<String>,
}

impl Run {
    pub fn converged(&self) -> bool {
        self.status == "converged"
    }
}

fn from_report(report: SolveReport, start: Option<String>) -> Run {
    let trace = match &report.trace {
        SolveTrace::Elimination(records) => TraceSummary::Elimination {
            rounds: report.iterations,
            picks: records
                .iter()
                .map(|r| Pick {
                    index: r.index,
                    sign: r.sign,
                    round: r.round,
                })
                .collect(),
        },
        SolveTrace::Newton(t) => TraceSummary::Newton {
            start: start.unwrap_or_default(),
            signatures: t.signatures.iter().map(ToString::to_string).collect(),
        },
    };
    Run {
        status: status_name(report.status).to_string(),
        iterations: report.iterations,
        z: Some(report.z),
        trace,
        message: None,
    }
}

pub fn run_sge(problem: &AveProblem) -> Run {
    match sge_solve(problem, &SgeOptions::default()) {
        Ok(report) => from_report(report, None),
        Err(e @ AveError::PivotBreakdown { .. }) => Run {
            status: "pivot_breakdown".into(),
            z: None,
            iterations: 0,
            trace: TraceSummary::None,
            message: Some(e.to_string()),
        },
        Err(e) => Run {
            status: "singular".into(),
            z: None,
            iterations: 0,
            trace: TraceSummary::None,
            message: Some(e.to_string()),
        },
    }
}

pub fn run_newton(problem: &AveProblem, start: Start, max_iter: Option<usize>) -> Run {
    let label = match &start {
        Start::Rhs => "b".to_string(),
        Start::Vector(v) => Signature::of(v).to_string(),
        Start::Signature(s) => s.to_string(),
    };
    let report = newton_solve(problem, &NewtonOptions { start, max_iter });
    from_report(report, Some(label))
}

pub fn run_oracle(problem: &AveProblem) -> CliResult<Run> {
    let result = enumerate_solutions(problem)?;
    let trace = TraceSummary::Oracle {
        solutions: result.count(),
        singular_orthants: result.singular_signatures.len(),
    };
    let iterations = 1usize << problem.dim();
    Ok(if result.count() == 1 {
        Run {
            status: "converged".into(),
            z: Some(result.solutions[0].1.clone()),
            iterations,
            trace,
            message: None,
        }
    } else {
        Run {
            status: "not_unique".into(),
            z: result.solutions.first().map(|(_, z)| z.clone()),
            iterations,
            trace,
            message: Some(format!("{} solutions found", result.count())),
        }
    })
}

pub struct SolveArgs<'a> {
    pub input: &'a Path,
    pub method: Method,
    pub start: &'a str,
    pub max_iter: Option<usize>,
    pub tol: f64,
    pub out: Option<&'a Path>,
}

pub fn cmd_solve(args: SolveArgs<'_>) -> CliResult<u8> {
    let t0 = Instant::now();
    let file = ProblemFile::read(args.input)?;
    let problem = file.problem()?;
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(CliError("--tol must be a positive number".into()));
    }
    let start = parse_start(args.start, problem.dim())?;

    let t_solve = Instant::now();
    let run = match args.method {
        Method::Sge => run_sge(&problem),
        Method::Newton => run_newton(&problem, start, args.max_iter),
        Method::Oracle => run_oracle(&problem)?,
    };
    let solve_ms = t_solve.elapsed().as_secs_f64() * 1e3;

    let profile = condition_profile(problem.a());
    let (residual, residual_accepted) = match &run.z {
        Some(z) => {
            let (r, ok) = residual_ok(&problem, z, args.tol);
            (Some(r), ok)
        }
        None => (None, false),
    };
    let accepted = run.converged() && residual_accepted;
    let known_solution_error = match (&file.known_solution, &run.z) {
        (Some(k), Some(z)) => Some(ave_core::linalg::max_abs_diff(k, z)),
        _ => None,
    };
    let report = ReportFile {
        method: format!("{:?}", args.method).to_lowercase(),
        status: run.status,
        z: run.z,
        residual,
        iterations: run.iterations,
        tol: args.tol,
        accepted,
        no_convergence_guarantee: !profile.any,
        known_solution_error,
        message: run.message,
        trace: run.trace,
        condition_profile: profile.into(),
        timings_ms: Timings {
            solve: solve_ms,
            total: t0.elapsed().as_secs_f64() * 1e3,
        },
    };
    emit(args.out, &to_json(&report))?;
    Ok(if accepted { 0 } else { 2 })
}
