//! Full-step Newton iteration `z^{k+1} = (I - A S_k)^{-1} b`, `S_k = S_{z^k}`.
//!
//! Each iterate is a function of the previous signature only, so the run
//! stops as soon as a signature repeats: immediately (a fixed point) or
//! after a detour (a cycle).

use std::collections::HashSet;

use crate::analysis::condition_profile;
use crate::linalg::lu_factor;
use crate::problems::AveProblem;
use crate::report::{Method, SolveReport, SolveTrace, Status};
use crate::signature::Signature;

/// Where the iteration starts.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Start {
    /// `S_0 = S_b`, i.e. `z^0 = b`.
    #[default]
    Rhs,
    Vector(Vec<f64>),
    Signature(Signature),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct NewtonOptions {
    pub start: Start,
    /// Defaults to `n + 1`.
    pub max_iter: Option<usize>,
}

/// `signatures[k]` is `S_k`; `iterates[k]` solves `(I - A S_k) z = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonTrace {
    pub signatures: Vec<Signature>,
    pub iterates: Vec<Vec<f64>>,
    pub status: Status,
}

pub fn newton_solve(problem: &AveProblem, options: &NewtonOptions) -> SolveReport {
    let n = problem.dim();
    let a = problem.a();
    let b = problem.b();
    let max_iter = options.max_iter.unwrap_or(n + 1).max(1);
    let start = match &options.start {
        Start::Rhs => Signature::of(b),
        Start::Vector(z0) => {
            assert_eq!(z0.len(), n, "start vector length mismatch");
            Signature::of(z0)
        }
        Start::Signature(s) => {
            assert_eq!(s.len(), n, "start signature length mismatch");
            s.clone()
        }
    };

    let mut signatures = vec![start.clone()];
    let mut seen: HashSet<Signature> = HashSet::from([start]);
    let mut iterates: Vec<Vec<f64>> = Vec::new();
    let mut status = Status::MaxIterations;

    for _ in 0..max_iter {
        let current = signatures.last().expect("nonempty history");
        let z = match lu_factor(&current.selection_matrix(a)) {
            Ok(lu) => lu.solve(b),
            Err(_) => {
                status = Status::SingularSystem;
                break;
            }
        };
        let next = Signature::of(&z);
        iterates.push(z);
        if &next == current {
            status = Status::Converged;
            signatures.push(next);
            break;
        }
        let repeat = !seen.insert(next.clone());
        signatures.push(next);
        if repeat {
            status = Status::CycleDetected;
            break;
        }
    }

    let z = iterates.last().cloned().unwrap_or_else(|| vec![0.0; n]);
    SolveReport {
        method: Method::Newton,
        status,
        residual: problem.residual(&z),
        z,
        iterations: iterates.len(),
        no_convergence_guarantee: !condition_profile(a).any,
        trace: SolveTrace::Newton(NewtonTrace {
            signatures,
            iterates,
            status,
        }),
    }
}
