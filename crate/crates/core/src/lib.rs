//! Solvers and analysis tools for absolute value equations
//!
//! ```text
//! z - A|z| = b
//! ```
//!
//! where `|z|` is taken entrywise. Two solvers are provided:
//!
//! * [`sge::sge_solve`], signed Gaussian elimination: a direct method that
//!   fixes one sign at a time and removes the variable by a rank-one update;
//! * [`newton::newton_solve`], the full-step (semismooth) Newton iteration
//!   `z^{k+1} = (I - A S_k)^{-1} b`.
//!
//! Both return the unique solution whenever `A` satisfies one of the
//! conditions summarized in [`analysis::ConditionProfile`]. The
//! [`oracle`] module enumerates all `2^n` orthants and serves as ground
//! truth; [`analysis`] computes the sign-real spectral radius that governs
//! unique solvability.
//!
//! ```
//! use ave_core::prelude::*;
//!
//! let a = Matrix::from_rows(&[[0.25, 0.0], [0.0, 0.25]])?;
//! let problem = AveProblem::new(a, vec![1.0, -2.0])?;
//! let report = sge_solve(&problem, &SgeOptions::default())?;
//! assert!((report.z[0] - 4.0 / 3.0).abs() < 1e-12);
//! assert!((report.z[1] + 1.6).abs() < 1e-12);
//! # Ok::<(), ave_core::AveError>(())
//! ```

pub mod analysis;
pub mod error;
pub mod linalg;
pub mod newton;
pub mod oracle;
pub mod problems;
pub mod report;
pub mod rng;
pub mod sge;
pub mod signature;

pub use error::{AveError, Result};

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/signatures.md")]
    mod signatures {}
    #[doc = include_str!("../../../book/src/conditions.md")]
    mod conditions {}
    #[doc = include_str!("../../../book/src/sge.md")]
    mod sge {}
    #[doc = include_str!("../../../book/src/newton.md")]
    mod newton {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

pub mod prelude {
    pub use crate::analysis::{
        condition_profile, det_positive_all_signatures, inverse_is_sdd_positive_diag,
        is_irreducible, is_strictly_diag_dominant, is_tridiag_abs_symmetric, neq_set,
        rho_sr_bisect, rho_sr_enum, ConditionProfile,
    };
    pub use crate::error::{AveError, Result};
    pub use crate::linalg::{determinant, lu_factor, rho0, Matrix};
    pub use crate::newton::{newton_solve, NewtonOptions, Start};
    pub use crate::oracle::{enumerate_solutions, unique_solution, OracleResult};
    pub use crate::problems::{
        from_equilibrium, gen_class, gen_instance, paper_counterexample_diag,
        paper_counterexample_newton, paper_counterexample_sge, AveProblem, EquilibriumProblem,
        MatrixClass,
    };
    pub use crate::report::{Method, SolveReport, Status};
    pub use crate::sge::{sge_solve, SgeOptions};
    pub use crate::signature::{signature_of, Signature};
}
