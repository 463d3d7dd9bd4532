//! Problem types and instance constructors.

use std::fmt;
use std::str::FromStr;

use crate::analysis::condition_profile;
use crate::error::{AveError, Result};
use crate::linalg::{abs_vec, lu_factor, Matrix};
use crate::rng::InstanceRng;

/// An absolute value equation `z - A|z| = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct AveProblem {
    a: Matrix,
    b: Vec<f64>,
}

impl AveProblem {
    pub fn new(a: Matrix, b: Vec<f64>) -> Result<Self> {
        let n = a.square_dim()?;
        if b.len() != n {
            return Err(AveError::DimensionMismatch {
                expected: n,
                found: b.len(),
            });
        }
        if let Some(index) = b.iter().position(|x| !x.is_finite()) {
            return Err(AveError::NonFinite { index });
        }
        Ok(Self { a, b })
    }

    /// The problem whose right-hand side is `b = z - A|z|`, so `z` solves it.
    pub fn from_solution(a: Matrix, z: &[f64]) -> Result<Self> {
        let n = a.square_dim()?;
        if z.len() != n {
            return Err(AveError::DimensionMismatch {
                expected: n,
                found: z.len(),
            });
        }
        let az = a.mul_vec(&abs_vec(z));
        let b = z.iter().zip(az).map(|(zi, ai)| zi - ai).collect();
        Self::new(a, b)
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    /// `‖z - A|z| - b‖∞`.
    pub fn residual(&self, z: &[f64]) -> f64 {
        assert_eq!(z.len(), self.dim(), "solution length mismatch");
        let az = self.a.mul_vec(&abs_vec(z));
        z.iter()
            .zip(az)
            .zip(&self.b)
            .fold(0.0, |m, ((zi, ai), bi)| m.max((zi - ai - bi).abs()))
    }

    /// Relabels coordinates by `perm`: new index `i` is old index `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            a: self.a.permute_symmetric(perm),
            b: perm.iter().map(|&p| self.b[p]).collect(),
        }
    }
}

/// Free-function form of [`AveProblem::residual`].
pub fn residual(problem: &AveProblem, z: &[f64]) -> f64 {
    problem.residual(z)
}

/// The equilibrium problem `B x + max(0, x) = c`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumProblem {
    pub b: Matrix,
    pub c: Vec<f64>,
}

impl EquilibriumProblem {
    pub fn new(b: Matrix, c: Vec<f64>) -> Result<Self> {
        let n = b.square_dim()?;
        if c.len() != n {
            return Err(AveError::DimensionMismatch {
                expected: n,
                found: c.len(),
            });
        }
        Ok(Self { b, c })
    }

    /// `‖B x + max(0, x) - c‖∞`.
    pub fn residual(&self, x: &[f64]) -> f64 {
        let bx = self.b.mul_vec(x);
        bx.iter()
            .zip(x)
            .zip(&self.c)
            .fold(0.0, |m, ((bxi, xi), ci)| {
                m.max((bxi + xi.max(0.0) - ci).abs())
            })
    }
}

/// An equilibrium problem rewritten as an AVE.
#[derive(Debug, Clone)]
pub struct EquilibriumReduction {
    pub problem: AveProblem,
}

impl EquilibriumReduction {
    /// Maps an AVE solution back to the equilibrium variable (`x = z`).
    pub fn recover(&self, z: &[f64]) -> Vec<f64> {
        z.to_vec()
    }
}

/// Rewrites `B x + max(0, x) = c` as `(2B + I) x + |x| = 2c`, then as the AVE
/// with `A = -(2B + I)^{-1}` and `b = 2 (2B + I)^{-1} c`.
pub fn from_equilibrium(p: &EquilibriumProblem) -> Result<EquilibriumReduction> {
    let n = p.b.nrows();
    let mut m = p.b.scale(2.0);
    for i in 0..n {
        m[(i, i)] += 1.0;
    }
    let lu = lu_factor(&m).map_err(|_| AveError::SingularTransform)?;
    let mut a = Matrix::zeros(n, n);
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        for (i, v) in lu.solve(&e).into_iter().enumerate() {
            a[(i, j)] = -v;
        }
    }
    let two_c: Vec<f64> = p.c.iter().map(|c| 2.0 * c).collect();
    let b = lu.solve(&two_c);
    Ok(EquilibriumReduction {
        problem: AveProblem::new(a, b)?,
    })
}

/// Random matrix families, one per sign-determination condition plus two
/// auxiliary families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixClass {
    /// `‖A‖∞ < 1/2`.
    NormLtHalf,
    /// Irreducible with `‖A‖∞ = 1/2` exactly.
    IrreducibleHalf,
    /// Strictly diagonally dominant, `1/2 <= ‖A‖∞ <= 2/3`.
    SddTwoThirds,
    /// `|A|` tridiagonal symmetric, `1/2 <= ‖A‖∞ < 0.99`.
    TridiagAbsSym,
    /// `0.2 <= ‖A‖∞ < 0.33`.
    NormLtThird,
    /// Dense uniform entries scaled to `‖A‖∞ = ν`.
    Unconstrained(f64),
}

impl MatrixClass {
    /// The four sign-determination classes, in condition order.
    pub const CONDITIONS: [MatrixClass; 4] = [
        MatrixClass::NormLtHalf,
        MatrixClass::IrreducibleHalf,
        MatrixClass::SddTwoThirds,
        MatrixClass::TridiagAbsSym,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MatrixClass::NormLtHalf => "norm-lt-half",
            MatrixClass::IrreducibleHalf => "irreducible-half",
            MatrixClass::SddTwoThirds => "sdd-two-thirds",
            MatrixClass::TridiagAbsSym => "tridiag-abs-sym",
            MatrixClass::NormLtThird => "norm-lt-third",
            MatrixClass::Unconstrained(_) => "unconstrained",
        }
    }

    /// Smallest dimension the class can be generated for.
    pub fn min_dim(&self) -> usize {
        match self {
            MatrixClass::TridiagAbsSym => 2,
            _ => 1,
        }
    }

    /// Independent re-check of the class predicate.
    pub fn accepts(&self, a: &Matrix) -> bool {
        let profile = condition_profile(a);
        match *self {
            MatrixClass::NormLtHalf => profile.cond1,
            MatrixClass::IrreducibleHalf => profile.cond2 && profile.norm_inf == 0.5,
            MatrixClass::SddTwoThirds => profile.cond3,
            MatrixClass::TridiagAbsSym => profile.cond4,
            MatrixClass::NormLtThird => profile.norm_inf < 1.0 / 3.0,
            MatrixClass::Unconstrained(nu) => (profile.norm_inf - nu).abs() <= 1e-12 * nu,
        }
    }
}

impl fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixClass::Unconstrained(nu) => write!(f, "unconstrained({nu})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for MatrixClass {
    type Err = String;

    /// Accepts the kebab-case names plus a few short aliases. The
    /// unconstrained family defaults to `ν = 1`; use `unconstrained:0.8` to
    /// pick another norm.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let class = match s {
            "norm-lt-half" | "norm_lt_half" | "cond1" => MatrixClass::NormLtHalf,
            "irreducible-half" | "irreducible_half" | "cond2" => MatrixClass::IrreducibleHalf,
            "sdd-two-thirds" | "sdd_two_thirds" | "sdd" | "cond3" => MatrixClass::SddTwoThirds,
            "tridiag-abs-sym" | "tridiag_abs_sym" | "tridiag" | "cond4" => {
                MatrixClass::TridiagAbsSym
            }
            "norm-lt-third" | "norm_lt_third" => MatrixClass::NormLtThird,
            "unconstrained" => MatrixClass::Unconstrained(1.0),
            other => match other.strip_prefix("unconstrained:") {
                Some(nu) => {
                    let nu: f64 = nu.parse().map_err(|_| format!("bad norm in {other:?}"))?;
                    if !(nu.is_finite() && nu > 0.0) {
                        return Err(format!("norm must be positive in {other:?}"));
                    }
                    MatrixClass::Unconstrained(nu)
                }
                None => return Err(format!("unknown matrix class {other:?}")),
            },
        };
        Ok(class)
    }
}

const MAX_ATTEMPTS: usize = 1000;

/// Dyadic unit for the exactly-normed irreducible family; sums of up to
/// 2^23 such entries are exact in double precision.
const DYADIC_UNIT: f64 = 1.0 / (1u64 << 30) as f64;

/// Deterministic random matrix of the given class. Every candidate is
/// re-checked with [`MatrixClass::accepts`] and resampled on failure.
pub fn gen_class(class: MatrixClass, n: usize, seed: u64) -> Result<Matrix> {
    gen_class_with(class, n, &mut InstanceRng::new(seed))
}

fn gen_class_with(class: MatrixClass, n: usize, rng: &mut InstanceRng) -> Result<Matrix> {
    assert!(
        n >= class.min_dim(),
        "{class} needs n >= {}",
        class.min_dim()
    );
    for _ in 0..MAX_ATTEMPTS {
        let candidate = match class {
            MatrixClass::NormLtHalf => rows_with_sums(n, rng, 0.05, 0.499),
            MatrixClass::NormLtThird => rows_with_sums(n, rng, 0.2, 0.33),
            MatrixClass::IrreducibleHalf => irreducible_half(n, rng),
            MatrixClass::SddTwoThirds => sdd(n, rng),
            MatrixClass::TridiagAbsSym => tridiag(n, rng),
            MatrixClass::Unconstrained(nu) => {
                let m = uniform_matrix(n, rng);
                let norm = m.norm_inf();
                if norm == 0.0 {
                    continue;
                }
                m.scale(nu / norm)
            }
        };
        if class.accepts(&candidate) {
            return Ok(candidate);
        }
    }
    Err(AveError::GenerationFailed {
        class: class.to_string(),
        attempts: MAX_ATTEMPTS,
    })
}

/// Random matrix of `class` with a random solution `z ∈ [-1, 1]^n` and
/// `b = z - A|z|`.
pub fn gen_instance(class: MatrixClass, n: usize, seed: u64) -> Result<(AveProblem, Vec<f64>)> {
    let mut rng = InstanceRng::new(seed);
    let a = gen_class_with(class, n, &mut rng)?;
    let z = rng.vector(n, -1.0, 1.0);
    Ok((AveProblem::from_solution(a, &z)?, z))
}

fn uniform_matrix(n: usize, rng: &mut InstanceRng) -> Matrix {
    let data = (0..n * n).map(|_| rng.uniform(-1.0, 1.0)).collect();
    Matrix::new(n, n, data).expect("finite by construction")
}

fn rows_with_sums(n: usize, rng: &mut InstanceRng, lo: f64, hi: f64) -> Matrix {
    let mut m = uniform_matrix(n, rng);
    for i in 0..n {
        let target = rng.uniform(lo, hi);
        let sum: f64 = m.row(i).iter().map(|x| x.abs()).sum();
        if sum > 0.0 {
            for j in 0..n {
                m[(i, j)] *= target / sum;
            }
        }
    }
    m
}

/// A random `n`-cycle guarantees strong connectivity; extra entries are
/// sprinkled with probability 0.3. Entries are integer multiples of
/// [`DYADIC_UNIT`] so one row sums to exactly 1/2 and the others to at
/// most 1/2.
fn irreducible_half(n: usize, rng: &mut InstanceRng) -> Matrix {
    let half_units: u64 = 1 << 29;
    let mut pattern = vec![vec![false; n]; n];
    let cycle = rng.permutation(n);
    for t in 0..n {
        pattern[cycle[t]][cycle[(t + 1) % n]] = true;
    }
    for row in pattern.iter_mut() {
        for cell in row.iter_mut() {
            if rng.bernoulli(0.3) {
                *cell = true;
            }
        }
    }
    let full_row = rng.below(n);
    let mut m = Matrix::zeros(n, n);
    for (i, row) in pattern.iter().enumerate() {
        let cols: Vec<usize> = (0..n).filter(|&j| row[j]).collect();
        let total = if i == full_row {
            half_units
        } else {
            let lo = half_units / 10;
            lo + (rng.unit() * (half_units - lo) as f64) as u64
        };
        let k = cols.len() as u64;
        let weights: Vec<f64> = cols.iter().map(|_| rng.uniform(0.05, 1.0)).collect();
        let wsum: f64 = weights.iter().sum();
        let spread = total - k;
        let mut parts: Vec<u64> = weights
            .iter()
            .map(|w| 1 + (spread as f64 * w / wsum).floor() as u64)
            .collect();
        let assigned: u64 = parts.iter().sum();
        parts[0] += total - assigned;
        for (&j, units) in cols.iter().zip(parts) {
            m[(i, j)] = rng.sign() * units as f64 * DYADIC_UNIT;
        }
    }
    m
}

fn sdd(n: usize, rng: &mut InstanceRng) -> Matrix {
    let mut m = uniform_matrix(n, rng);
    for i in 0..n {
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| m[(i, j)].abs()).sum();
        let magnitude = if n == 1 {
            rng.uniform(0.1, 1.0)
        } else {
            off * (1.5 - 0.5 * rng.unit())
        };
        m[(i, i)] = rng.sign() * magnitude;
    }
    let target = rng.uniform(0.5, 2.0 / 3.0);
    m.scale(target / m.norm_inf())
}

fn tridiag(n: usize, rng: &mut InstanceRng) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = rng.uniform(-1.0, 1.0);
    }
    for i in 0..n - 1 {
        let mag = 1.0 - rng.unit();
        m[(i, i + 1)] = rng.sign() * mag;
        m[(i + 1, i)] = rng.sign() * mag;
    }
    let target = rng.uniform(0.5, 0.99);
    m.scale(target / m.norm_inf())
}

/// `A = [[ε/2, (1+ε)/2], [0, 1/2]]` with known solution `z = (ε/2, 1)`.
/// Signed elimination picks the wrong first sign on this instance.
pub fn paper_counterexample_sge(eps: f64) -> (AveProblem, Vec<f64>) {
    assert!(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
    let a =
        Matrix::from_rows(&[[eps / 2.0, (1.0 + eps) / 2.0], [0.0, 0.5]]).expect("finite entries");
    let z = vec![eps / 2.0, 1.0];
    let problem = AveProblem::from_solution(a, &z).expect("square 2x2");
    (problem, z)
}

/// The 3-cycle `A = [[0,0,a],[a,0,0],[0,a,0]]` with `b = (1, 1, 1)`, on which
/// full-step Newton cycles from every mixed-sign start when `a = 5/8`.
pub fn paper_counterexample_newton(a: f64) -> AveProblem {
    let m =
        Matrix::from_rows(&[[0.0, 0.0, a], [a, 0.0, 0.0], [0.0, a, 0.0]]).expect("finite entries");
    AveProblem::new(m, vec![1.0; 3]).expect("square 3x3")
}

/// `(1 + ε) I_n`.
pub fn paper_counterexample_diag(eps: f64, n: usize) -> Matrix {
    assert!(eps > 0.0 && n >= 1);
    Matrix::identity(n).scale(1.0 + eps)
}
