//! Linear equations `a_1 x_1 + ... + a_k x_k = b` over the positive integers.
//!
//! Variables are positional: names are dropped at parse time and printing
//! uses `x1, ..., xk`.

mod parse;
mod triple;

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use parse::parse_equation;
pub use triple::{partition_to_triple, CanonicalTriple};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearEquation {
    coeffs: Vec<i64>,
    rhs: i64,
}

/// Homogeneity flags of an equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub homogeneous: bool,
    pub translation_invariant: bool,
}

impl LinearEquation {
    /// Builds an equation, rejecting zero coefficients and fewer than two variables.
    pub fn new(coeffs: Vec<i64>, rhs: i64) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::TooFewVariables {
                min: 2,
                found: coeffs.len(),
            });
        }
        if let Some(pos) = coeffs.iter().position(|&a| a == 0) {
            return Err(Error::ZeroInput(pos));
        }
        Ok(Self { coeffs, rhs })
    }

    /// Homogeneous equation from its coefficients.
    pub fn homogeneous(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.to_vec(), 0)
    }

    /// `p x + q y = r z`.
    pub fn triple(p: i64, q: i64, r: i64) -> Result<Self> {
        Self::new(vec![p, q, -r], 0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn rhs(&self) -> i64 {
        self.rhs
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn classify(&self) -> Classification {
        let homogeneous = self.rhs == 0;
        let sum: i128 = self.coeffs.iter().map(|&a| a as i128).sum();
        Classification {
            homogeneous,
            translation_invariant: homogeneous && sum == 0,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rhs == 0
    }

    pub fn is_translation_invariant(&self) -> bool {
        self.classify().translation_invariant
    }

    /// `sum a_i x_i - b`, exact.
    pub fn residual(&self, x: &[u32]) -> i128 {
        self.coeffs
            .iter()
            .zip(x)
            .map(|(&a, &v)| a as i128 * v as i128)
            .sum::<i128>()
            - self.rhs as i128
    }

    pub fn is_satisfied_by(&self, x: &[u32]) -> bool {
        x.len() == self.arity() && self.residual(x) == 0
    }

    /// Whether the satisfying tuple `x` is a trivial solution.
    ///
    /// A partition of the indices into equal-value classes with zero
    /// coefficient sums exists iff every value class itself has zero
    /// coefficient sum: any valid partition refines the value classes, and
    /// merging zero-sum classes of the same value keeps the sum zero.
    pub fn is_trivial_solution(&self, x: &[u32]) -> Result<bool> {
        if x.len() != self.arity() {
            return Err(Error::TupleLength {
                expected: self.arity(),
                got: x.len(),
            });
        }
        if self.residual(x) != 0 {
            return Err(Error::NotASolution(x.to_vec()));
        }
        Ok(self.trivial_unchecked(x))
    }

    /// Triviality test for a tuple already known to satisfy the equation.
    pub(crate) fn trivial_unchecked(&self, x: &[u32]) -> bool {
        if !self.is_translation_invariant() {
            return false;
        }
        let mut class_sums: BTreeMap<u32, i128> = BTreeMap::new();
        for (&a, &v) in self.coeffs.iter().zip(x) {
            *class_sums.entry(v).or_default() += a as i128;
        }
        class_sums.values().all(|&s| s == 0)
    }

    /// Identifies `x_i` with `x_j`; the merged coefficient takes the place of
    /// the lower index.
    pub fn collapse_variables(&self, i: usize, j: usize) -> Result<Self> {
        let len = self.arity();
        for index in [i, j] {
            if index >= len {
                return Err(Error::IndexOutOfRange { index, len });
            }
        }
        if i == j {
            return Err(Error::Partition(format!("cannot collapse index {i} with itself")));
        }
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let merged = self.coeffs[lo]
            .checked_add(self.coeffs[hi])
            .ok_or(Error::Overflow)?;
        if merged == 0 {
            return Err(Error::DegenerateCollapse { i, j });
        }
        let mut coeffs = self.coeffs.clone();
        coeffs[lo] = merged;
        coeffs.remove(hi);
        Self::new(coeffs, self.rhs)
    }

    /// Multiplies every coefficient and the right-hand side by `c`.
    pub fn scaled(&self, c: i64) -> Result<Self> {
        if c == 0 {
            return Err(Error::ZeroInput(0));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| a.checked_mul(c).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        let rhs = self.rhs.checked_mul(c).ok_or(Error::Overflow)?;
        Self::new(coeffs, rhs)
    }

    /// gcd of all coefficients and b.
    pub fn content(&self) -> i64 {
        self.coeffs.iter().fold(self.rhs.abs(), |g, &a| g.gcd(&a))
    }
}

impl fmt::Display for LinearEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &a) in self.coeffs.iter().enumerate() {
            let sign = if a < 0 { "-" } else if i > 0 { "+" } else { "" };
            let mag = a.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}x{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}x{}", i + 1)?;
            }
        }
        write!(f, "={}", self.rhs)
    }
}

impl std::str::FromStr for LinearEquation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_equation(s)
    }
}
