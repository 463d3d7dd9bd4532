use super::poly::{real_roots, Polynomial};
use super::Matrix;
use crate::error::{AveError, Result};

/// Largest dimension accepted by [`char_poly`] and [`rho0`].
pub const MAX_CHAR_POLY_DIM: usize = 16;

/// Characteristic polynomial `det(λI - A)` by the Faddeev–LeVerrier recursion.
///
/// With `M_0 = 0` and `c_n = 1`:
/// `M_k = A M_{k-1} + c_{n-k+1} I`, `c_{n-k} = -tr(A M_k) / k`.
pub fn char_poly(a: &Matrix) -> Result<Polynomial> {
    let n = a.square_dim()?;
    if n > MAX_CHAR_POLY_DIM {
        return Err(AveError::DimensionTooLarge {
            n,
            max: MAX_CHAR_POLY_DIM,
        });
    }
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        m = a.matmul(&m);
        let c_prev = coeffs[n - k + 1];
        for i in 0..n {
            m[(i, i)] += c_prev;
        }
        coeffs[n - k] = -a.matmul(&m).trace() / k as f64;
    }
    Ok(Polynomial::new(coeffs))
}

/// Real eigenvalues of `a`, each to absolute accuracy about `tol`.
pub fn real_eigenvalues(a: &Matrix, tol: f64) -> Result<Vec<f64>> {
    let n = a.square_dim()?;
    if n > MAX_CHAR_POLY_DIM {
        return Err(AveError::DimensionTooLarge {
            n,
            max: MAX_CHAR_POLY_DIM,
        });
    }
    let scale = a.norm_inf();
    if scale == 0.0 {
        return Ok(vec![0.0]);
    }
    // Work on A / ‖A‖∞ so every eigenvalue lies in [-1, 1].
    let p = char_poly(&a.scale(1.0 / scale))?;
    let bound = 1.0 + 1e-6;
    let roots = real_roots(&p, -bound, bound, tol / scale);
    Ok(roots.into_iter().map(|r| r * scale).collect())
}

/// Real spectral radius: largest magnitude of a real eigenvalue, or 0 when
/// the spectrum has no real part.
pub fn rho0(a: &Matrix, tol: f64) -> Result<f64> {
    Ok(real_eigenvalues(a, tol)?
        .into_iter()
        .fold(0.0, |m, r| m.max(r.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circulant(a: f64) -> Matrix {
        Matrix::from_rows(&[[0.0, 0.0, a], [a, 0.0, 0.0], [0.0, a, 0.0]]).unwrap()
    }

    #[test]
    fn char_poly_examples() {
        let p = char_poly(&Matrix::identity(2)).unwrap();
        assert_eq!(p.coeffs(), &[1.0, -2.0, 1.0]);

        let swap = Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(char_poly(&swap).unwrap().coeffs(), &[-1.0, 0.0, 1.0]);

        let a: f64 = 5.0 / 8.0;
        let p = char_poly(&circulant(a)).unwrap();
        let expected = [-a.powi(3), 0.0, 0.0, 1.0];
        for (c, e) in p.coeffs().iter().zip(expected) {
            assert!((c - e).abs() < 1e-15, "{:?}", p.coeffs());
        }
    }

    #[test]
    fn char_poly_dimension_cap() {
        let big = Matrix::identity(17);
        assert_eq!(
            char_poly(&big),
            Err(AveError::DimensionTooLarge { n: 17, max: 16 })
        );
        assert!(rho0(&big, 1e-10).is_err());
    }

    #[test]
    fn rho0_examples() {
        let rot = Matrix::from_rows(&[[0.0, -1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(rho0(&rot, 1e-12).unwrap(), 0.0);

        let d = Matrix::from_diagonal(&[0.3, -0.9]);
        assert!((rho0(&d, 1e-12).unwrap() - 0.9).abs() < 1e-11);

        assert!((rho0(&circulant(0.625), 1e-12).unwrap() - 0.625).abs() < 1e-11);
        assert_eq!(rho0(&Matrix::zeros(3, 3), 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn rho0_unchanged_by_signature_similarity() {
        let a = Matrix::from_rows(&[[0.1, 0.7, -0.2], [0.4, -0.3, 0.5], [0.9, 0.2, 0.1]]).unwrap();
        let base = rho0(&a, 1e-13).unwrap();
        for mask in 0..8u32 {
            let s: Vec<f64> = (0..3)
                .map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 })
                .collect();
            let sas = a.scale_rows(&s).scale_columns(&s);
            assert!((rho0(&sas, 1e-13).unwrap() - base).abs() < 1e-10);
        }
    }
}
