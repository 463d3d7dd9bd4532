use thiserror::Error;

/// Errors produced by the solvers and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AveError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite entry at position {index}")]
    NonFinite { index: usize },

    #[error("matrix must have at least one row and one column")]
    Empty,

    #[error("matrix is singular: pivot {pivot:e} at step {step} is below threshold {threshold:e}")]
    SingularMatrix {
        step: usize,
        pivot: f64,
        threshold: f64,
    },

    #[error("dimension {n} exceeds the supported maximum of {max}")]
    DimensionTooLarge { n: usize, max: usize },

    #[error(
        "elimination pivot 1 - a_kk*s = {denominator:e} at index {index} is too close to zero"
    )]
    PivotBreakdown { index: usize, denominator: f64 },

    #[error("expected exactly one solution, found {count}")]
    NotUnique { count: usize },

    #[error("2B + I is singular; the equilibrium problem has no AVE form")]
    SingularTransform,

    #[error("failed to generate a {class} matrix after {attempts} attempts")]
    GenerationFailed { class: String, attempts: usize },

    #[error("invalid signature: {0}")]
    InvalidSignature(String),
}

pub type Result<T> = std::result::Result<T, AveError>;
