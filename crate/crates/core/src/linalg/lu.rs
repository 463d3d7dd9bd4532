use super::Matrix;
use crate::error::{AveError, Result};

/// Pivot magnitude at or below which a matrix is treated as singular.
pub fn singularity_threshold(a: &Matrix) -> f64 {
    1e-14 * (1.0 + a.norm_inf())
}

/// LU factorization with partial (row) pivoting, `P A = L U`.
///
/// `L` is unit lower triangular and shares storage with `U`.
#[derive(Debug, Clone)]
pub struct LuFactorization {
    lu: Matrix,
    perm: Vec<usize>,
    perm_sign: f64,
}

impl LuFactorization {
    pub fn new(a: &Matrix) -> Result<Self> {
        let n = a.square_dim()?;
        let threshold = singularity_threshold(a);
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut perm_sign = 1.0;

        for k in 0..n {
            let (p, pivot_abs) =
                (k..n)
                    .map(|i| (i, lu[(i, k)].abs()))
                    .fold(
                        (k, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if pivot_abs <= threshold {
                return Err(AveError::SingularMatrix {
                    step: k,
                    pivot: pivot_abs,
                    threshold,
                });
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
                perm_sign = -perm_sign;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor != 0.0 {
                    for j in k + 1..n {
                        lu[(i, j)] -= factor * lu[(k, j)];
                    }
                }
            }
        }
        Ok(Self {
            lu,
            perm,
            perm_sign,
        })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Row permutation: row `i` of `P A` is row `perm[i]` of `A`.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn permutation_sign(&self) -> f64 {
        self.perm_sign
    }

    pub fn lower(&self) -> Matrix {
        let n = self.dim();
        let mut l = Matrix::identity(n);
        for i in 0..n {
            for j in 0..i {
                l[(i, j)] = self.lu[(i, j)];
            }
        }
        l
    }

    pub fn upper(&self) -> Matrix {
        let n = self.dim();
        let mut u = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                u[(i, j)] = self.lu[(i, j)];
            }
        }
        u
    }

    pub fn determinant(&self) -> f64 {
        (0..self.dim()).map(|i| self.lu[(i, i)]).product::<f64>() * self.perm_sign
    }

    /// Solves `A x = b` by forward and back substitution.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(
            b.len(),
            n,
            "right-hand side length must match the factorization"
        );
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[(i, i)];
        }
        x
    }
}

pub fn lu_factor(a: &Matrix) -> Result<LuFactorization> {
    LuFactorization::new(a)
}

/// Determinant via LU; zero when the factorization reports singularity.
pub fn determinant(a: &Matrix) -> f64 {
    match LuFactorization::new(a) {
        Ok(lu) => lu.determinant(),
        Err(AveError::SingularMatrix { .. }) => 0.0,
        Err(e) => panic!("determinant of a non-square matrix: {e}"),
    }
}
