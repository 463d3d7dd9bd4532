//! Signed Gaussian elimination.
//!
//! Once the sign `s` of `z_k` is known, `|z_k| = s z_k` and the `k`-th
//! variable can be removed from the right-hand side of `z = b + A|z|`
//! with a rank-one update. Writing `c = s A_{*k} / (1 - s A_kk)` and
//! `A_red` for `A` with column `k` zeroed:
//!
//! ```text
//! b̄ = b + c b_k
//! Ā = A_red + c (A_red)_{k*}
//! ```
//!
//! The solver repeatedly pins the signs of the entries of `b̄` with maximal
//! magnitude among the not-yet-eliminated indices, eliminates them, and
//! finishes with a scalar solve and back substitution.

use crate::analysis::condition_profile;
use crate::error::{AveError, Result};
use crate::linalg::{abs_vec, singularity_threshold, Matrix};
use crate::problems::AveProblem;
use crate::report::{Method, SolveReport, SolveTrace, Status};

/// One sign-controlled elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EliminationRecord {
    pub index: usize,
    pub sign: i8,
    pub round: usize,
}

/// Working data of the elimination: `z = b_work + A_work |z|` holds for
/// every solution `z` whose signs agree with the recorded picks.
#[derive(Debug, Clone)]
pub struct SgeState {
    a: Matrix,
    b: Vec<f64>,
    active: Vec<usize>,
    trace: Vec<EliminationRecord>,
    threshold: f64,
}

impl SgeState {
    pub fn new(problem: &AveProblem) -> Self {
        Self {
            a: problem.a().clone(),
            b: problem.b().to_vec(),
            active: (0..problem.dim()).collect(),
            trace: Vec::new(),
            threshold: singularity_threshold(problem.a()),
        }
    }

    pub fn a_work(&self) -> &Matrix {
        &self.a
    }

    pub fn b_work(&self) -> &[f64] {
        &self.b
    }

    /// Indices not yet eliminated, ascending.
    pub fn active(&self) -> &[usize] {
        &self.active
    }

    pub fn trace(&self) -> &[EliminationRecord] {
        &self.trace
    }

    /// The principal submatrix of `A_work` on the active indices.
    pub fn active_submatrix(&self) -> Matrix {
        let m = self.active.len();
        let mut sub = Matrix::zeros(m, m);
        for (r, &i) in self.active.iter().enumerate() {
            for (c, &j) in self.active.iter().enumerate() {
                sub[(r, c)] = self.a[(i, j)];
            }
        }
        sub
    }

    /// Eliminates active index `k` assuming `sign(z_k) = sign`.
    pub fn elim_step(&mut self, k: usize, sign: i8, round: usize) -> Result<()> {
        let pos = self
            .active
            .iter()
            .position(|&i| i == k)
            .unwrap_or_else(|| panic!("index {k} is not active"));
        assert!(sign == 1 || sign == -1, "sign must be ±1");
        let s = f64::from(sign);
        let n = self.b.len();

        let mut col: Vec<f64> = (0..n).map(|i| self.a[(i, k)] * s).collect();
        let denominator = 1.0 - col[k];
        if denominator.abs() <= self.threshold {
            return Err(AveError::PivotBreakdown {
                index: k,
                denominator,
            });
        }
        for i in 0..n {
            self.a[(i, k)] = 0.0;
        }
        col.iter_mut().for_each(|c| *c /= denominator);

        let bk = self.b[k];
        for (bi, ci) in self.b.iter_mut().zip(&col) {
            *bi += ci * bk;
        }
        let row_k = self.a.row(k).to_vec();
        for (i, &ci) in col.iter().enumerate() {
            if ci == 0.0 {
                continue;
            }
            for (j, &akj) in row_k.iter().enumerate() {
                self.a[(i, j)] += ci * akj;
            }
        }

        self.active.remove(pos);
        self.trace.push(EliminationRecord {
            index: k,
            sign,
            round,
        });
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SgeOptions {
    /// Relative tolerance for treating an entry of `b̄` as maximal.
    pub tie_tol: f64,
}

impl Default for SgeOptions {
    fn default() -> Self {
        Self { tie_tol: 0.0 }
    }
}

fn sign_of(x: f64) -> i8 {
    if x >= 0.0 {
        1
    } else {
        -1
    }
}

/// Solves `z - A|z| = b` by signed Gaussian elimination.
///
/// The solve is attempted for any `A`; when `A` meets none of the
/// sign-determination conditions the report's `no_convergence_guarantee`
/// flag is set and the result may be wrong.
pub fn sge_solve(problem: &AveProblem, options: &SgeOptions) -> Result<SolveReport> {
    let n = problem.dim();
    let profile = condition_profile(problem.a());
    let mut state = SgeState::new(problem);
    let mut rounds = 0;
    let mut zero_tail = false;

    while state.active.len() > 1 {
        let bmax = state
            .active
            .iter()
            .fold(0.0_f64, |m, &i| m.max(state.b[i].abs()));
        if bmax == 0.0 {
            zero_tail = true;
            break;
        }
        let cutoff = (1.0 - options.tie_tol) * bmax;
        // All picks of a round are read before the round mutates b_work.
        let picks: Vec<(usize, i8)> = state
            .active
            .iter()
            .filter(|&&i| state.b[i].abs() >= cutoff)
            .map(|&i| (i, sign_of(state.b[i])))
            .collect();
        for (k, s) in picks {
            state.elim_step(k, s, rounds)?;
        }
        rounds += 1;
    }

    let mut z = vec![0.0; n];
    if !zero_tail {
        if let [j] = state.active[..] {
            let s = sign_of(state.b[j]);
            let denominator = 1.0 - state.a[(j, j)] * f64::from(s);
            if denominator.abs() <= state.threshold {
                return Err(AveError::PivotBreakdown {
                    index: j,
                    denominator,
                });
            }
            z[j] = state.b[j] / denominator;
        }
    }
    for rec in state.trace.iter().rev() {
        let k = rec.index;
        let abs_z = abs_vec(&z);
        let tail: f64 = state.a.row(k).iter().zip(&abs_z).map(|(a, v)| a * v).sum();
        z[k] = state.b[k] + tail;
    }

    Ok(SolveReport {
        method: Method::Sge,
        status: Status::Converged,
        residual: problem.residual(&z),
        z,
        iterations: rounds,
        no_convergence_guarantee: !profile.any,
        trace: SolveTrace::Elimination(state.trace),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{paper_counterexample_diag, paper_counterexample_sge};

    fn problem(rows: &[&[f64]], b: &[f64]) -> AveProblem {
        AveProblem::new(Matrix::from_rows(rows).unwrap(), b.to_vec()).unwrap()
    }

    #[test]
    fn single_step_matches_hand_computation() {
        let p = problem(&[&[0.25, 0.0], &[0.5, 0.25]], &[1.0, 1.0]);
        let mut st = SgeState::new(&p);
        st.elim_step(0, 1, 0).unwrap();
        let a = st.a_work();
        assert_eq!(a.column(0), vec![0.0, 0.0]);
        assert_eq!(a[(0, 1)], 0.0);
        assert_eq!(a[(1, 1)], 0.25);
        assert!((st.b_work()[0] - 4.0 / 3.0).abs() < 1e-15);
        assert!((st.b_work()[1] - 5.0 / 3.0).abs() < 1e-15);
        assert_eq!(st.active(), &[1]);
        assert_eq!(
            st.trace(),
            &[EliminationRecord {
                index: 0,
                sign: 1,
                round: 0
            }]
        );
    }

    #[test]
    fn zero_column_leaves_state_unchanged() {
        let p = problem(&[&[0.0, 0.0], &[0.0, 0.0]], &[3.0, -1.0]);
        let mut st = SgeState::new(&p);
        st.elim_step(1, -1, 0).unwrap();
        assert_eq!(st.b_work(), &[3.0, -1.0]);
        assert_eq!(st.a_work(), &Matrix::zeros(2, 2));
    }

    #[test]
    fn unit_pivot_breaks_down() {
        let p = problem(&[&[1.0]], &[1.0]);
        let mut st = SgeState::new(&p);
        assert!(matches!(
            st.elim_step(0, 1, 0),
            Err(AveError::PivotBreakdown { index: 0, .. })
        ));
        assert!(matches!(
            sge_solve(&p, &SgeOptions::default()),
            Err(AveError::PivotBreakdown { index: 0, .. })
        ));
    }

    #[test]
    fn solves_scaled_identity() {
        let p = problem(&[&[0.25, 0.0], &[0.0, 0.25]], &[1.0, -2.0]);
        let r = sge_solve(&p, &SgeOptions::default()).unwrap();
        assert!((r.z[0] - 4.0 / 3.0).abs() < 1e-15);
        assert!((r.z[1] + 1.6).abs() < 1e-15);
        assert!(r.residual <= 1e-12);
        assert!(!r.no_convergence_guarantee);
    }

    #[test]
    fn zero_matrix_returns_rhs() {
        let p = problem(
            &[&[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]],
            &[1.0, -2.0, 0.5],
        );
        let r = sge_solve(&p, &SgeOptions::default()).unwrap();
        assert_eq!(r.z, vec![1.0, -2.0, 0.5]);
    }

    #[test]
    fn zero_rhs_gives_zero() {
        let p = problem(&[&[0.2, 0.1], &[-0.3, 0.1]], &[0.0, 0.0]);
        let r = sge_solve(&p, &SgeOptions::default()).unwrap();
        assert_eq!(r.z, vec![0.0, 0.0]);
        assert!(r.elimination_trace().unwrap().is_empty());
    }

    #[test]
    fn tied_maxima_share_a_round() {
        let p = problem(&[&[0.25, 0.0], &[0.0, 0.25]], &[1.0, 1.0]);
        let r = sge_solve(&p, &SgeOptions::default()).unwrap();
        let trace = r.elimination_trace().unwrap();
        assert_eq!(trace.len(), 2);
        assert!(trace.iter().all(|t| t.round == 0));
        for zi in &r.z {
            assert!((zi - 4.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn led_astray_by_near_half_norm() {
        let (p, z) = paper_counterexample_sge(0.01);
        let r = sge_solve(&p, &SgeOptions::default()).unwrap();
        let first = r.elimination_trace().unwrap()[0];
        assert_eq!((first.index, first.sign), (0, -1));
        assert!(r.no_convergence_guarantee);
        let err = crate::linalg::max_abs_diff(&r.z, &z);
        assert!(r.residual > 1e-6 || err > 1e-6);
    }

    #[test]
    fn wrong_first_sign_beyond_unit_norm() {
        let a = paper_counterexample_diag(0.01, 2);
        let p = AveProblem::new(a, vec![-1.0, -1.0]).unwrap();
        let r = sge_solve(&p, &SgeOptions::default()).unwrap();
        assert_eq!(r.elimination_trace().unwrap()[0].sign, -1);
        assert!(crate::linalg::max_abs_diff(&r.z, &[100.0, 100.0]) > 1.0);
    }
}
