//! Dense linear algebra used by the solvers: matrices, LU factorization,
//! characteristic polynomials and real-root isolation.

mod eigen;
mod lu;
mod matrix;
mod poly;

pub use eigen::{char_poly, real_eigenvalues, rho0, MAX_CHAR_POLY_DIM};
pub use lu::{determinant, lu_factor, singularity_threshold, LuFactorization};
pub use matrix::{abs_vec, max_abs_diff, norm_inf, Matrix};
pub use poly::{real_roots, Polynomial};
