//! JSON file formats: problem files in, report files out.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use ave_core::analysis::ConditionProfile;
use ave_core::linalg::Matrix;
use ave_core::problems::AveProblem;
use serde::{Deserialize, Serialize};

/// An error that ends the process with exit code 1.
#[derive(Debug)]
pub struct CliError(pub String);

impl<T: std::fmt::Display> From<T> for CliError {
    fn from(e: T) -> Self {
        CliError(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub known_solution: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<BTreeMap<String, String>>,
}

impl ProblemFile {
    pub fn from_problem(problem: &AveProblem) -> Self {
        Self {
            n: problem.dim(),
            a: problem.a().to_rows(),
            b: problem.b().to_vec(),
            known_solution: None,
            metadata: None,
        }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: ProblemFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            if path == "." {
                CliError(format!("malformed problem file: {}", e.inner()))
            } else {
                CliError(format!(
                    "malformed problem file at field `{path}`: {}",
                    e.inner()
                ))
            }
        })?;
        file.validate()?;
        Ok(file)
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError(format!("{}: {}", path.display(), e.0)))
    }

    fn validate(&self) -> CliResult<()> {
        let n = self.n;
        if n == 0 {
            return Err(CliError("field `n`: must be at least 1".into()));
        }
        if self.a.len() != n {
            return Err(CliError(format!(
                "field `A`: {} rows, expected n = {n}",
                self.a.len()
            )));
        }
        for (i, row) in self.a.iter().enumerate() {
            if row.len() != n {
                return Err(CliError(format!(
                    "field `A[{i}]`: {} entries, expected n = {n}",
                    row.len()
                )));
            }
        }
        if self.b.len() != n {
            return Err(CliError(format!(
                "field `b`: length {}, expected n = {n}",
                self.b.len()
            )));
        }
        if let Some(z) = &self.known_solution {
            if z.len() != n {
                return Err(CliError(format!(
                    "field `known_solution`: length {}, expected n = {n}",
                    z.len()
                )));
            }
        }
        Ok(())
    }

    pub fn problem(&self) -> CliResult<AveProblem> {
        let a = Matrix::from_rows(&self.a).map_err(|e| CliError(format!("field `A`: {e}")))?;
        AveProblem::new(a, self.b.clone()).map_err(|e| CliError(format!("field `b`: {e}")))
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.as_ref()?.get(key).map(String::as_str)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileEcho {
    pub norm_inf: f64,
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    pub cond4: bool,
    pub any: bool,
}

impl From<ConditionProfile> for ProfileEcho {
    fn from(p: ConditionProfile) -> Self {
        Self {
            norm_inf: p.norm_inf,
            cond1: p.cond1,
            cond2: p.cond2,
            cond3: p.cond3,
            cond4: p.cond4,
            any: p.any,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pick {
    pub index: usize,
    pub sign: i8,
    pub round: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceSummary {
    Elimination {
        rounds: usize,
        picks: Vec<Pick>,
    },
    Newton {
        start: String,
        signatures: Vec<String>,
    },
    Oracle {
        solutions: usize,
        singular_orthants: usize,
    },
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub solve: f64,
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub method: String,
    pub status: String,
    pub z: Option<Vec<f64>>,
    /// `‖z - A|z| - b‖∞`, recomputed from the problem file.
    pub residual: Option<f64>,
    pub iterations: usize,
    pub tol: f64,
    /// Converged status and residual within `tol (1 + ‖A‖∞ ‖z‖∞ + ‖b‖∞)`.
    pub accepted: bool,
    pub no_convergence_guarantee: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub known_solution_error: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub trace: TraceSummary,
    pub condition_profile: ProfileEcho,
    pub timings_ms: Timings,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Writes to `out`, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ave_core::rng::InstanceRng;

    #[test]
    fn problem_file_round_trips_exactly() {
        let mut rng = InstanceRng::new(5);
        for _ in 0..200 {
            let n = 1 + rng.below(6);
            let scale = 10f64.powi(rng.below(40) as i32 - 20);
            let file = ProblemFile {
                n,
                a: (0..n).map(|_| rng.vector(n, -scale, scale)).collect(),
                b: rng.vector(n, -1.0, 1.0),
                known_solution: Some(rng.vector(n, -1e300, 1e300)),
                metadata: Some(BTreeMap::from([("k".to_string(), "v".to_string())])),
            };
            assert_eq!(ProblemFile::parse(&to_json(&file)).unwrap(), file);
        }
    }

    #[test]
    fn report_file_round_trips_exactly() {
        let report = ReportFile {
            method: "newton".into(),
            status: "cycle".into(),
            z: Some(vec![0.1 + 0.2, -1.0 / 3.0, 5e-324]),
            residual: Some(f64::EPSILON),
            iterations: 3,
            tol: 1e-10,
            accepted: false,
            no_convergence_guarantee: true,
            known_solution_error: None,
            message: None,
            trace: TraceSummary::Newton {
                start: "+-+".into(),
                signatures: vec!["+-+".into(), "-++".into()],
            },
            condition_profile: ProfileEcho {
                norm_inf: 0.625,
                cond1: false,
                cond2: false,
                cond3: false,
                cond4: false,
                any: false,
            },
            timings_ms: Timings {
                solve: 0.5,
                total: 1.25,
            },
        };
        let back: ReportFile = serde_json::from_str(&to_json(&report)).unwrap();
        assert_eq!(back, report);
    }
}
