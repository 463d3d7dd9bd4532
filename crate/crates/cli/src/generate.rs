use std::collections::BTreeMap;
use std::path::Path;

use ave_core::oracle::unique_solution;
use ave_core::problems::{
    gen_class, gen_instance, paper_counterexample_diag, paper_counterexample_newton,
    paper_counterexample_sge, AveProblem, MatrixClass,
};
use ave_core::rng::InstanceRng;
use clap::ValueEnum;

use crate::files::{emit, to_json, CliError, CliResult, ProblemFile};

pub const VALID_CLASSES: &str = "norm-lt-half, irreducible-half, sdd-two-thirds, tridiag-abs-sym, \
norm-lt-third, unconstrained (with --nu), paper-sge, paper-newton, paper-diag";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rhs {
    /// `b = z - A|z|` for a random `z`, recorded as the known solution.
    FromRandomZ,
    /// `b` drawn directly; no known solution.
    Explicit,
}

pub struct GenerateArgs<'a> {
    pub class: &'a str,
    pub n: Option<usize>,
    pub seed: u64,
    pub rhs: Rhs,
    pub eps: f64,
    pub a: f64,
    pub nu: Option<f64>,
    pub out: Option<&'a Path>,
}

fn meta(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

pub fn generate(args: &GenerateArgs<'_>) -> CliResult<ProblemFile> {
    let (problem, known, metadata): (AveProblem, Option<Vec<f64>>, _) = match args.class {
        "paper-sge" => {
            let (p, z) = paper_counterexample_sge(check_eps(args.eps)?);
            let m = meta(&[("class", "paper-sge".into()), ("eps", args.eps.to_string())]);
            (p, Some(z), m)
        }
        "paper-newton" => {
            if !args.a.is_finite() {
                return Err(CliError("--a must be finite".into()));
            }
            let p = paper_counterexample_newton(args.a);
            let z = unique_solution(&p).ok();
            let m = meta(&[
                ("class", "paper-newton".into()),
                ("a", args.a.to_string()),
                ("start", "+-+".into()),
            ]);
            (p, z, m)
        }
        "paper-diag" => {
            let n = args.n.unwrap_or(2);
            if n == 0 {
                return Err(CliError("--n must be at least 1".into()));
            }
            let a = paper_counterexample_diag(check_eps(args.eps)?, n);
            let p = AveProblem::new(a, vec![-1.0; n])?;
            let z = vec![1.0 / args.eps; n];
            let m = meta(&[
                ("class", "paper-diag".into()),
                ("eps", args.eps.to_string()),
                ("n", n.to_string()),
            ]);
            (p, Some(z), m)
        }
        name => {
            let mut class: MatrixClass = name
                .parse()
                .map_err(|e| CliError(format!("--class: {e}; valid classes: {VALID_CLASSES}")))?;
            if let (MatrixClass::Unconstrained(_), Some(nu)) = (class, args.nu) {
                if !(nu.is_finite() && nu > 0.0) {
                    return Err(CliError("--nu must be positive".into()));
                }
                class = MatrixClass::Unconstrained(nu);
            }
            let n = args
                .n
                .ok_or_else(|| CliError(format!("--n is required for class {name}")))?;
            if n < class.min_dim() {
                return Err(CliError(format!(
                    "--n: class {class} needs n >= {}",
                    class.min_dim()
                )));
            }
            let mut m = meta(&[
                ("class", class.to_string()),
                ("n", n.to_string()),
                ("seed", args.seed.to_string()),
            ]);
            match args.rhs {
                Rhs::FromRandomZ => {
                    let (p, z) = gen_instance(class, n, args.seed)?;
                    m.insert("rhs".into(), "from-random-z".into());
                    (p, Some(z), m)
                }
                Rhs::Explicit => {
                    let a = gen_class(class, n, args.seed)?;
                    // A separate stream so that b does not repeat the draws behind A.
                    let b = InstanceRng::new(!args.seed).vector(n, -1.0, 1.0);
                    m.insert("rhs".into(), "explicit".into());
                    (AveProblem::new(a, b)?, None, m)
                }
            }
        }
    };
    let mut file = ProblemFile::from_problem(&problem);
    file.known_solution = known;
    file.metadata = Some(metadata);
    Ok(file)
}

fn check_eps(eps: f64) -> CliResult<f64> {
    if eps > 0.0 && eps < 1.0 {
        Ok(eps)
    } else {
        Err(CliError(format!("--eps must lie in (0, 1), got {eps}")))
    }
}

pub fn cmd_generate(args: GenerateArgs<'_>) -> CliResult<u8> {
    let file = generate(&args)?;
    emit(args.out, &to_json(&file))?;
    Ok(0)
}
