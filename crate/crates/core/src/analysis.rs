//! Structural predicates, sign-real spectral radius estimators and the
//! solvability checks that tie them together.
//!
//! The sign-real spectral radius is `ρ^R(A) = max { ρ0(S A) : S signature }`
//! where `ρ0` is the largest magnitude of a real eigenvalue. The AVE
//! `z - A|z| = b` has a unique solution for every `b` exactly when
//! `ρ^R(A) < 1`, equivalently when `det(I - A S) > 0` for every signature.
//! Both characterizations are implemented here so they can be checked
//! against each other.

use std::collections::VecDeque;

use crate::error::{AveError, Result};
use crate::linalg::{determinant, lu_factor, rho0, singularity_threshold, Matrix};
use crate::rng::InstanceRng;
use crate::signature::Signature;

/// Largest dimension for which the `2^n` signature enumerations are run.
pub const MAX_ENUM_DIM: usize = 12;

/// Default bisection width for [`rho_sr_bisect`].
pub const DEFAULT_BISECT_TOL: f64 = 1e-8;

fn check_enum_dim(a: &Matrix) -> Result<usize> {
    let n = a.square_dim()?;
    if n > MAX_ENUM_DIM {
        return Err(AveError::DimensionTooLarge {
            n,
            max: MAX_ENUM_DIM,
        });
    }
    Ok(n)
}

/// True iff the digraph with an edge `i -> j` for every `A_ij != 0` is
/// strongly connected. Every 1×1 matrix counts as irreducible.
pub fn is_irreducible(a: &Matrix) -> bool {
    let n = a.nrows();
    assert!(a.is_square());
    if n == 1 {
        return true;
    }
    let reaches_all = |forward: bool| {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                let w = if forward { a[(i, j)] } else { a[(j, i)] };
                if i != j && w != 0.0 && !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reaches_all(true) && reaches_all(false)
}

/// `|A_ii| > Σ_{j≠i} |A_ij|` for every row.
pub fn is_strictly_diag_dominant(a: &Matrix) -> bool {
    assert!(a.is_square());
    a.rows().enumerate().all(|(i, row)| {
        let off: f64 = row
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, x)| x.abs())
            .sum();
        row[i].abs() > off
    })
}

/// `A` is tridiagonal and `|A|` is symmetric.
pub fn is_tridiag_abs_symmetric(a: &Matrix) -> bool {
    let n = a.nrows();
    assert!(a.is_square());
    (0..n).all(|i| {
        (0..n).all(|j| {
            if i.abs_diff(j) > 1 {
                a[(i, j)] == 0.0
            } else {
                a[(i, j)].abs() == a[(j, i)].abs()
            }
        })
    })
}

/// Which of the four sign-determination conditions a matrix meets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionProfile {
    pub norm_inf: f64,
    /// `‖A‖∞ < 1/2`.
    pub cond1: bool,
    /// irreducible and `‖A‖∞ <= 1/2`.
    pub cond2: bool,
    /// strictly diagonally dominant and `‖A‖∞ <= 2/3`.
    pub cond3: bool,
    /// `|A|` tridiagonal and symmetric, `‖A‖∞ < 1`, `n >= 2`.
    pub cond4: bool,
    pub any: bool,
}

pub fn condition_profile(a: &Matrix) -> ConditionProfile {
    assert!(a.is_square());
    let norm = a.norm_inf();
    let cond1 = norm < 0.5;
    let cond2 = norm <= 0.5 && is_irreducible(a);
    let cond3 = norm <= 2.0 / 3.0 && is_strictly_diag_dominant(a);
    let cond4 = a.nrows() >= 2 && norm < 1.0 && is_tridiag_abs_symmetric(a);
    ConditionProfile {
        norm_inf: norm,
        cond1,
        cond2,
        cond3,
        cond4,
        any: cond1 || cond2 || cond3 || cond4,
    }
}

/// Indices `i` with `|b_i|` maximal. An index ties with the maximum when
/// `|b_i| >= (1 - tie_tol) ‖b‖∞`; `tie_tol = 0` demands exact equality.
pub fn max_abs_indices(b: &[f64], tie_tol: f64) -> Vec<usize> {
    let bmax = b.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let cutoff = (1.0 - tie_tol) * bmax;
    (0..b.len()).filter(|&i| b[i].abs() >= cutoff).collect()
}

/// `Neq(b, z)`: maximal-magnitude indices of `b` whose sign differs from
/// the sign of `z` there (zero counts as positive).
pub fn neq_set(b: &[f64], z: &[f64], tie_tol: f64) -> Vec<usize> {
    assert_eq!(b.len(), z.len(), "b and z must have the same length");
    let sb = Signature::of(b);
    let sz = Signature::of(z);
    max_abs_indices(b, tie_tol)
        .into_iter()
        .filter(|&i| sb.signs()[i] != sz.signs()[i])
        .collect()
}

/// `ρ^R(A)` by enumerating signatures.
///
/// `ρ0(S A) = ρ0(-S A)` since negating a matrix negates its eigenvalues,
/// so only the `2^(n-1)` signatures with `s_1 = +1` are visited.
pub fn rho_sr_enum(a: &Matrix, tol: f64) -> Result<f64> {
    let n = check_enum_dim(a)?;
    let mut best = 0.0_f64;
    for half in 0..1u64 << (n - 1) {
        let s = Signature::from_mask(n, half << 1);
        best = best.max(rho0(&s.left_mul(a), tol)?);
    }
    Ok(best)
}

/// Same as [`rho_sr_enum`] but over all `2^n` signatures.
pub fn rho_sr_enum_full(a: &Matrix, tol: f64) -> Result<f64> {
    check_enum_dim(a)?;
    let mut best = 0.0_f64;
    for s in Signature::all(a.nrows()) {
        best = best.max(rho0(&s.left_mul(a), tol)?);
    }
    Ok(best)
}

fn all_selection_dets_positive(a: &Matrix) -> bool {
    Signature::all(a.nrows()).all(|s| determinant(&s.selection_matrix(a)) > 0.0)
}

/// `ρ^R(A)` by bisection on the determinant characterization.
///
/// For `t > 0`, `ρ^R(A / t) < 1` iff `det(I - (A/t) S) > 0` for all `S`, so
/// the admissible `t` form the ray `(ρ^R(A), ∞)`. The search runs over
/// `[σ, ‖A‖∞]` until the bracket is narrower than `tol`.
pub fn rho_sr_bisect(a: &Matrix, tol: f64) -> Result<f64> {
    check_enum_dim(a)?;
    let norm = a.norm_inf();
    if norm == 0.0 {
        return Ok(0.0);
    }
    let mut lo = singularity_threshold(a);
    let mut hi = norm;
    if lo >= hi {
        return Ok(hi);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if all_selection_dets_positive(&a.scale(1.0 / mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// True iff `det(I - A S)` exceeds the singularity threshold of `I - A S`
/// for every signature `S`.
pub fn det_positive_all_signatures(a: &Matrix) -> Result<bool> {
    check_enum_dim(a)?;
    Ok(Signature::all(a.nrows()).all(|s| {
        let m = s.selection_matrix(a);
        determinant(&m) > singularity_threshold(&m)
    }))
}

/// Randomized lower bound on `ρ^R(A)` from the max-min characterization
/// `max_{x≠0} min_{x_i≠0} |(Ax)_i / x_i|`.
pub fn rho_sr_lower_bound_sampled(a: &Matrix, samples: usize, seed: u64) -> f64 {
    let n = a.nrows();
    let mut rng = InstanceRng::new(seed);
    let mut best = 0.0_f64;
    for _ in 0..samples {
        let x: Vec<f64> = (0..n)
            .map(|_| rng.sign() * rng.uniform(1e-3, 1.0))
            .collect();
        let ax = a.mul_vec(&x);
        let worst = ax
            .iter()
            .zip(&x)
            .map(|(y, xi)| (y / xi).abs())
            .fold(f64::INFINITY, f64::min);
        best = best.max(worst);
    }
    best
}

/// True iff `(I - A)^{-1}` is strictly diagonally dominant with a positive
/// diagonal. Fails with `SingularMatrix` when `I - A` is singular.
pub fn inverse_is_sdd_positive_diag(a: &Matrix) -> Result<bool> {
    let n = a.square_dim()?;
    let lu = lu_factor(&a.identity_minus())?;
    let mut inv = Matrix::zeros(n, n);
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        for (i, v) in lu.solve(&e).into_iter().enumerate() {
            inv[(i, j)] = v;
        }
    }
    let positive_diag = (0..n).all(|i| inv[(i, i)] > 0.0);
    Ok(positive_diag && is_strictly_diag_dominant(&inv))
}
