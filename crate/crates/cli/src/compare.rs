use std::fs;
use std::path::{Path, PathBuf};

use ave_core::linalg::{max_abs_diff, norm_inf};
use ave_core::oracle::enumerate_solutions;
use ave_core::problems::MatrixClass;
use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use crate::files::{emit, to_json, CliError, CliResult, ProblemFile};
use crate::generate::{generate, GenerateArgs, Rhs};
use crate::solve::{parse_start, residual_ok, run_newton, run_sge, Run};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Paper,
    Random,
}

const MATCH_TOL: f64 = 1e-8;
const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Serialize)]
struct SolverCell {
    status: String,
    ok: bool,
    residual: Option<f64>,
}

#[derive(Debug, Serialize)]
struct Row {
    name: String,
    n: usize,
    oracle_solutions: Option<usize>,
    newton_start: String,
    sge: SolverCell,
    newton: SolverCell,
    agreement: &'static str,
}

#[derive(Debug, Default, Serialize)]
struct Summary {
    instances: usize,
    both: usize,
    sge_only: usize,
    fn_only: usize,
    neither: usize,
}

#[derive(Debug, Serialize)]
struct Skipped {
    name: String,
    error: String,
}

#[derive(Debug, Serialize)]
struct CompareFile {
    instances: Vec<Row>,
    summary: Summary,
    skipped: Vec<Skipped>,
}

type Instance = (String, CliResult<ProblemFile>);

fn suite_instances(suite: Suite) -> Vec<Instance> {
    fn base(class: &str, n: Option<usize>, seed: u64) -> GenerateArgs<'_> {
        GenerateArgs {
            class,
            n,
            seed,
            rhs: Rhs::FromRandomZ,
            eps: 0.01,
            a: 0.625,
            nu: None,
            out: None,
        }
    }
    match suite {
        Suite::Paper => vec![
            (
                "01-sge-counterexample".into(),
                generate(&base("paper-sge", None, 0)),
            ),
            (
                "02-newton-circulant".into(),
                generate(&base("paper-newton", None, 0)),
            ),
        ],
        Suite::Random => {
            let mut out = Vec::new();
            for class in MatrixClass::CONDITIONS {
                for k in 0..5u64 {
                    let n = 2 + (k as usize * 3) % 7;
                    let name = format!("{}-{k:02}", class.name());
                    out.push((name, generate(&base(class.name(), Some(n), 1000 + k))));
                }
            }
            for k in 0..5u64 {
                let n = 2 + (k as usize * 3) % 7;
                let args = GenerateArgs {
                    nu: Some(0.75),
                    ..base("unconstrained", Some(n), 2000 + k)
                };
                out.push((format!("unconstrained-{k:02}"), generate(&args)));
            }
            out
        }
    }
}

fn dir_instances(dir: &Path) -> CliResult<Vec<Instance>> {
    let entries = fs::read_dir(dir)
        .map_err(|e| CliError(format!("cannot read directory {}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    Ok(paths
        .into_iter()
        .map(|p| {
            let name = p
                .file_stem()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            (name, ProblemFile::read(&p))
        })
        .collect())
}

/// A run succeeds when it converges to the oracle's unique solution, or,
/// when the oracle cannot certify one, to a point with small residual.
fn judge(run: &Run, file: &ProblemFile, unique: Option<&[f64]>) -> SolverCell {
    let problem = file.problem().expect("validated on load");
    let (residual, ok) = match &run.z {
        Some(z) => {
            let (r, small) = residual_ok(&problem, z, RESIDUAL_TOL);
            let ok = run.converged()
                && match unique {
                    Some(truth) => max_abs_diff(z, truth) <= MATCH_TOL * (1.0 + norm_inf(truth)),
                    None => small,
                };
            (Some(r), ok)
        }
        None => (None, false),
    };
    SolverCell {
        status: run.status.clone(),
        ok,
        residual,
    }
}

fn compare_one(name: &str, file: &ProblemFile) -> CliResult<Row> {
    let problem = file.problem()?;
    let start_spec = file.meta("start").unwrap_or("b").to_string();
    let start = parse_start(&start_spec, problem.dim())?;
    let oracle = enumerate_solutions(&problem).ok();
    let unique = oracle
        .as_ref()
        .filter(|o| o.count() == 1)
        .map(|o| o.solutions[0].1.as_slice());
    let sge = judge(&run_sge(&problem), file, unique);
    let newton = judge(&run_newton(&problem, start, None), file, unique);
    let agreement = match (sge.ok, newton.ok) {
        (true, true) => "both",
        (true, false) => "sge_only",
        (false, true) => "fn_only",
        (false, false) => "neither",
    };
    Ok(Row {
        name: name.to_string(),
        n: problem.dim(),
        oracle_solutions: oracle.map(|o| o.count()),
        newton_start: start_spec,
        sge,
        newton,
        agreement,
    })
}

/// Worker count from `AVE_THREADS`; 0 or unset means serial.
fn thread_cap() -> usize {
    std::env::var("AVE_THREADS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(0)
}

fn run_all(instances: Vec<Instance>) -> CliResult<Vec<(String, CliResult<Row>)>> {
    let task = |(name, file): Instance| {
        let row = file.and_then(|f| compare_one(&name, &f));
        (name, row)
    };
    let threads = thread_cap();
    if threads == 0 {
        return Ok(instances.into_iter().map(task).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()?;
    Ok(pool.install(|| instances.into_par_iter().map(task).collect()))
}

fn check(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn cmd_compare(dir: Option<&Path>, suite: Option<Suite>, out: Option<&Path>) -> CliResult<u8> {
    let instances = match (dir, suite) {
        (Some(d), None) => dir_instances(d)?,
        (None, Some(s)) => suite_instances(s),
        _ => {
            return Err(CliError(
                "exactly one of --dir and --suite is required".into(),
            ))
        }
    };
    let mut results = run_all(instances)?;
    results.sort_by(|x, y| x.0.cmp(&y.0));

    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    let mut summary = Summary::default();
    for (name, result) in results {
        match result {
            Ok(row) => {
                summary.instances += 1;
                match row.agreement {
                    "both" => summary.both += 1,
                    "sge_only" => summary.sge_only += 1,
                    "fn_only" => summary.fn_only += 1,
                    _ => summary.neither += 1,
                }
                rows.push(row);
            }
            Err(e) => skipped.push(Skipped { name, error: e.0 }),
        }
    }

    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(8).max(8);
    println!(
        "{:<width$}  {:>3}  {:>6}  {:<16}  {:<16}  agreement",
        "instance", "n", "oracle", "sge", "newton"
    );
    for r in &rows {
        let oracle = r
            .oracle_solutions
            .map_or("-".to_string(), |c| c.to_string());
        println!(
            "{:<width$}  {:>3}  {:>6}  {:<16}  {:<16}  {}",
            r.name,
            r.n,
            oracle,
            format!("{} {}", check(r.sge.ok), r.sge.status),
            format!("{} {}", check(r.newton.ok), r.newton.status),
            r.agreement
        );
    }
    println!(
        "summary: {} instances, both {}, sge_only {}, fn_only {}, neither {}",
        summary.instances, summary.both, summary.sge_only, summary.fn_only, summary.neither
    );
    for s in &skipped {
        println!("skipped {}: {}", s.name, s.error);
    }

    if let Some(path) = out {
        let file = CompareFile {
            instances: rows,
            summary,
            skipped,
        };
        emit(Some(path), &to_json(&file))?;
    }
    Ok(0)
}
