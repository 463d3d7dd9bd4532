use std::fmt;

use crate::newton::NewtonTrace;
use crate::sge::EliminationRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Sge,
    Newton,
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Sge => "sge",
            Method::Newton => "newton",
            Method::Oracle => "oracle",
        })
    }
}

/// How a solver run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Converged,
    CycleDetected,
    MaxIterations,
    SingularSystem,
}

impl Status {
    pub fn is_converged(self) -> bool {
        self == Status::Converged
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolveTrace {
    Elimination(Vec<EliminationRecord>),
    Newton(NewtonTrace),
}

/// Outcome of a single solver run. `residual` is always measured against
/// the original `(A, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub method: Method,
    pub status: Status,
    pub z: Vec<f64>,
    pub residual: f64,
    /// Elimination rounds for SGE, linear solves for Newton.
    pub iterations: usize,
    /// Set when `A` meets none of the sign-determination conditions.
    pub no_convergence_guarantee: bool,
    pub trace: SolveTrace,
}

impl SolveReport {
    pub fn elimination_trace(&self) -> Option<&[EliminationRecord]> {
        match &self.trace {
            SolveTrace::Elimination(t) => Some(t),
            SolveTrace::Newton(_) => None,
        }
    }

    pub fn newton_trace(&self) -> Option<&NewtonTrace> {
        match &self.trace {
            SolveTrace::Newton(t) => Some(t),
            SolveTrace::Elimination(_) => None,
        }
    }
}
