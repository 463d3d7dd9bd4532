//! Reference solver by exhaustive orthant search.
//!
//! For every signature `S`, the candidate `z = (I - A S)^{-1} b` solves the
//! AVE iff it lies in the orthant `S` encodes. Checking all `2^n`
//! orthants finds every solution, at exponential cost.

use crate::analysis::MAX_ENUM_DIM;
use crate::error::{AveError, Result};
use crate::linalg::{lu_factor, max_abs_diff, norm_inf};
use crate::problems::AveProblem;
use crate::signature::Signature;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Distinct solutions, each with the first orthant that produced it.
    pub solutions: Vec<(Signature, Vec<f64>)>,
    /// Orthants whose selection matrix `I - A S` is singular.
    pub singular_signatures: Vec<Signature>,
}

impl OracleResult {
    pub fn count(&self) -> usize {
        self.solutions.len()
    }
}

pub fn enumerate_solutions(problem: &AveProblem) -> Result<OracleResult> {
    let n = problem.dim();
    if n > MAX_ENUM_DIM {
        return Err(AveError::DimensionTooLarge {
            n,
            max: MAX_ENUM_DIM,
        });
    }
    let a = problem.a();
    let b = problem.b();
    let a_norm = a.norm_inf();
    let b_norm = norm_inf(b);

    let mut solutions: Vec<(Signature, Vec<f64>)> = Vec::new();
    let mut singular_signatures = Vec::new();
    for s in Signature::all(n) {
        let lu = match lu_factor(&s.selection_matrix(a)) {
            Ok(lu) => lu,
            Err(_) => {
                singular_signatures.push(s);
                continue;
            }
        };
        let z = lu.solve(b);
        let z_norm = norm_inf(&z);
        let sign_tol = 1e-10 * (1.0 + z_norm);
        let in_orthant = (0..n).all(|i| s.sign(i) * z[i] >= -sign_tol);
        if !in_orthant {
            continue;
        }
        if problem.residual(&z) > 1e-10 * (1.0 + a_norm * z_norm + b_norm) {
            continue;
        }
        let dup_tol = 1e-9 * (1.0 + z_norm);
        if solutions
            .iter()
            .any(|(_, w)| max_abs_diff(w, &z) <= dup_tol)
        {
            continue;
        }
        solutions.push((s, z));
    }
    Ok(OracleResult {
        solutions,
        singular_signatures,
    })
}

/// The solution when there is exactly one, `NotUnique` otherwise.
pub fn unique_solution(problem: &AveProblem) -> Result<Vec<f64>> {
    let mut result = enumerate_solutions(problem)?;
    match result.solutions.len() {
        1 => Ok(result.solutions.pop().expect("one solution").1),
        count => Err(AveError::NotUnique { count }),
    }
}
