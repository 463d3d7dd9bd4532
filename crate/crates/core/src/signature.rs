use std::fmt;
use std::str::FromStr;

use crate::error::{AveError, Result};
use crate::linalg::Matrix;

/// Diagonal ±1 matrix, stored as its sign vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    signs: Vec<i8>,
}

impl Signature {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(AveError::InvalidSignature(format!("entry {bad} is not ±1")));
        }
        Ok(Self { signs })
    }

    pub fn positive(n: usize) -> Self {
        Self { signs: vec![1; n] }
    }

    /// `S_z`: `s_i = +1` when `z_i >= 0` (including `-0.0`), else `-1`.
    pub fn of(z: &[f64]) -> Self {
        Self {
            signs: z.iter().map(|&x| if x >= 0.0 { 1 } else { -1 }).collect(),
        }
    }

    /// Signature whose `i`-th sign is `-1` exactly when bit `i` of `mask` is set.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self {
            signs: (0..n)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect(),
        }
    }

    /// All `2^n` signatures, ordered by [`Signature::from_mask`] index.
    pub fn all(n: usize) -> impl Iterator<Item = Signature> {
        assert!(n < 64, "signature enumeration limited to n < 64");
        (0..1u64 << n).map(move |mask| Self::from_mask(n, mask))
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign(&self, i: usize) -> f64 {
        f64::from(self.signs[i])
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.signs.iter().map(|&s| f64::from(s)).collect()
    }

    pub fn negated(&self) -> Self {
        Self {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    pub fn is_mixed(&self) -> bool {
        self.signs.contains(&1) && self.signs.contains(&-1)
    }

    /// `S z`.
    pub fn apply(&self, z: &[f64]) -> Vec<f64> {
        assert_eq!(z.len(), self.len());
        z.iter()
            .zip(&self.signs)
            .map(|(x, &s)| f64::from(s) * x)
            .collect()
    }

    /// `S A`.
    pub fn left_mul(&self, a: &Matrix) -> Matrix {
        a.scale_rows(&self.as_f64())
    }

    /// `A S`.
    pub fn right_mul(&self, a: &Matrix) -> Matrix {
        a.scale_columns(&self.as_f64())
    }

    /// `I - A S`, the selection matrix of the orthant encoded by `self`.
    pub fn selection_matrix(&self, a: &Matrix) -> Matrix {
        self.right_mul(a).identity_minus()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.signs {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signature({self})")
    }
}

impl FromStr for Signature {
    type Err = AveError;

    /// Parses strings such as `"+-+"`.
    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(AveError::InvalidSignature(format!(
                    "unexpected character {other:?} in {s:?}"
                ))),
            })
            .collect::<Result<Vec<i8>>>()?;
        if signs.is_empty() {
            return Err(AveError::InvalidSignature("empty signature".into()));
        }
        Ok(Self { signs })
    }
}

/// Free-function form of [`Signature::of`].
pub fn signature_of(z: &[f64]) -> Signature {
    Signature::of(z)
}
