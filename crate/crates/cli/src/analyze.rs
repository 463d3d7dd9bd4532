use std::path::Path;

use ave_core::analysis::{
    condition_profile, det_positive_all_signatures, is_irreducible, is_strictly_diag_dominant,
    is_tridiag_abs_symmetric, rho_sr_bisect, rho_sr_enum, DEFAULT_BISECT_TOL, MAX_ENUM_DIM,
};
use ave_core::linalg::{rho0, MAX_CHAR_POLY_DIM};
use clap::ValueEnum;
use serde::Serialize;

use crate::files::{emit, to_json, CliResult, ProblemFile, ProfileEcho};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RhoMethod {
    Enum,
    Bisect,
    Both,
}

#[derive(Debug, Serialize)]
struct AnalysisFile {
    n: usize,
    norm_inf: f64,
    norm_one: f64,
    condition_profile: ProfileEcho,
    irreducible: bool,
    strictly_diag_dominant: bool,
    tridiag_abs_symmetric: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho_sr_enum: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho_sr_bisect: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    det_positive_all_signatures: Option<bool>,
    notes: Vec<String>,
}

pub fn cmd_analyze(input: &Path, rho: RhoMethod, out: Option<&Path>) -> CliResult<u8> {
    let file = ProblemFile::read(input)?;
    let problem = file.problem()?;
    let a = problem.a();
    let n = problem.dim();

    let mut report = AnalysisFile {
        n,
        norm_inf: a.norm_inf(),
        norm_one: a.norm_one(),
        condition_profile: condition_profile(a).into(),
        irreducible: is_irreducible(a),
        strictly_diag_dominant: is_strictly_diag_dominant(a),
        tridiag_abs_symmetric: is_tridiag_abs_symmetric(a),
        rho0: None,
        rho_sr_enum: None,
        rho_sr_bisect: None,
        det_positive_all_signatures: None,
        notes: Vec::new(),
    };
    if n <= MAX_CHAR_POLY_DIM {
        report.rho0 = Some(rho0(a, 1e-12)?);
    }
    if n <= MAX_ENUM_DIM {
        if matches!(rho, RhoMethod::Enum | RhoMethod::Both) {
            report.rho_sr_enum = Some(rho_sr_enum(a, 1e-12)?);
        }
        if matches!(rho, RhoMethod::Bisect | RhoMethod::Both) {
            report.rho_sr_bisect = Some(rho_sr_bisect(a, DEFAULT_BISECT_TOL)?);
        }
        report.det_positive_all_signatures = Some(det_positive_all_signatures(a)?);
    } else {
        report.notes.push(format!(
            "dimension cap: n = {n} exceeds {MAX_ENUM_DIM}; rho^R and determinant signs omitted"
        ));
    }
    emit(out, &to_json(&report))?;
    Ok(0)
}
