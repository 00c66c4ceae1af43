//! Fixed-point data of a torus action with isolated fixed points.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{FactoredRational, Polynomial};

/// A tangent weight: a nonzero integer vector `(a₁, …, a_ℓ)`, read as the
/// linear form `Σ aᵢ uᵢ`. Nonzero-ness is checked by
/// [`LocalizationProblem::validate`], not on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coefficients: Vec<i64>) -> Self {
        Weight(coefficients)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::linear(&self.0)
    }

    pub fn negated(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn pairing(&self, direction: &[i64]) -> i128 {
        self.0.iter().zip(direction).map(|(&a, &x)| i128::from(a) * i128::from(x)).sum()
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Orientation of a fixed point relative to its listed weight representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Sign {
    #[default]
    Positive,
    Negative,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl core::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedPoint {
    label: String,
    weights: Vec<Weight>,
    sign: Sign,
}

impl FixedPoint {
    pub fn new(label: impl Into<String>, weights: Vec<Weight>, sign: Sign) -> Self {
        FixedPoint { label: label.into(), weights, sign }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Equivariant Euler class of the tangent space: `sign · Π wᵢ`, a
    /// polynomial of cohomological degree `2n`.
    pub fn euler_class(&self, rank: usize) -> Polynomial {
        let product = self.weights.iter().fold(Polynomial::one(rank), |acc, w| &acc * &w.to_polynomial());
        match self.sign {
            Sign::Positive => product,
            Sign::Negative => -product,
        }
    }

    /// `numerator / euler_class` as a cancelled factored rational.
    pub fn divide_by_euler(&self, numerator: Polynomial) -> FactoredRational {
        let numerator = match self.sign {
            Sign::Positive => numerator,
            Sign::Negative => -numerator,
        };
        FactoredRational::over_product(numerator, self.weights.iter().map(Weight::coefficients))
            .expect("fixed point validated: weights nonzero and of the problem's rank")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ZeroRank,
    NoFixedPoints,
    ZeroWeight { point: String, index: usize },
    WeightLength { point: String, index: usize, expected: usize, found: usize },
    WeightCount { point: String, expected: usize, found: usize },
    DuplicateLabel { label: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroRank => f.write_str("torus rank must be at least 1"),
            Violation::NoFixedPoints => f.write_str("problem has no fixed points"),
            Violation::ZeroWeight { point, index } => {
                write!(f, "fixed point {point:?}: weight {index} is zero")
            }
            Violation::WeightLength { point, index, expected, found } => {
                write!(f, "fixed point {point:?}: weight {index} has length {found}, expected torus rank {expected}")
            }
            Violation::WeightCount { point, expected, found } => {
                write!(f, "fixed point {point:?}: {found} weights, expected {expected}")
            }
            Violation::DuplicateLabel { label } => write!(f, "duplicate fixed point label {label:?}"),
        }
    }
}

/// Every violation found in a problem, in discovery order.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ValidationError(pub Vec<Violation>);

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid fixed-point data")?;
        for v in &self.0 {
            write!(f, "; {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error("direction has length {found}, expected torus rank {expected}")]
    Length { expected: usize, found: usize },
    #[error("direction is not generic: weight {index} {weight} of fixed point {point:?} pairs to zero")]
    NonGeneric { point: String, index: usize, weight: Weight },
    #[error("exponent of weight {index} at fixed point {point:?} does not fit in 64 bits")]
    Overflow { point: String, index: usize },
}

/// Fixed-point data of a `T = (S¹)^rank` action on a manifold of real
/// dimension `2·half_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationProblem {
    rank: usize,
    half_dim: usize,
    points: Vec<FixedPoint>,
}

impl LocalizationProblem {
    /// Builds and validates.
    pub fn new(rank: usize, half_dim: usize, points: Vec<FixedPoint>) -> Result<Self, ValidationError> {
        let p = Self::from_parts(rank, half_dim, points);
        p.validate()?;
        Ok(p)
    }

    /// Builds without checking; call [`validate`](Self::validate) before use.
    pub fn from_parts(rank: usize, half_dim: usize, points: Vec<FixedPoint>) -> Self {
        LocalizationProblem { rank, half_dim, points }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    /// Real dimension `2n` of the manifold.
    pub fn dimension(&self) -> u64 {
        2 * self.half_dim as u64
    }

    pub fn points(&self) -> &[FixedPoint] {
        &self.points
    }

    pub fn into_points(self) -> Vec<FixedPoint> {
        self.points
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        let mut violations = Vec::new();
        if self.rank == 0 {
            violations.push(Violation::ZeroRank);
        }
        if self.points.is_empty() {
            violations.push(Violation::NoFixedPoints);
        }
        let mut seen = BTreeSet::new();
        for pt in &self.points {
            if !seen.insert(pt.label.as_str()) {
                violations.push(Violation::DuplicateLabel { label: pt.label.clone() });
            }
            if pt.weights.len() != self.half_dim {
                violations.push(Violation::WeightCount {
                    point: pt.label.clone(),
                    expected: self.half_dim,
                    found: pt.weights.len(),
                });
            }
            for (index, w) in pt.weights.iter().enumerate() {
                if w.rank() != self.rank {
                    violations.push(Violation::WeightLength {
                        point: pt.label.clone(),
                        index,
                        expected: self.rank,
                        found: w.rank(),
                    });
                }
                if w.is_zero() {
                    violations.push(Violation::ZeroWeight { point: pt.label.clone(), index });
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationError(violations))
        }
    }

    /// Restricts the action to the circle `t ↦ (t^ξ₁, …, t^ξ_ℓ)`: every weight
    /// `w` becomes the exponent `⟨w, ξ⟩`. Signs and labels are kept.
    pub fn circle_reduce(&self, direction: &[i64]) -> Result<LocalizationProblem, ReduceError> {
        if direction.len() != self.rank {
            return Err(ReduceError::Length { expected: self.rank, found: direction.len() });
        }
        let mut points = Vec::with_capacity(self.points.len());
        for pt in &self.points {
            let mut weights = Vec::with_capacity(pt.weights.len());
            for (index, w) in pt.weights.iter().enumerate() {
                let m = w.pairing(direction);
                if m == 0 {
                    return Err(ReduceError::NonGeneric { point: pt.label.clone(), index, weight: w.clone() });
                }
                let m = i64::try_from(m).map_err(|_| ReduceError::Overflow { point: pt.label.clone(), index })?;
                weights.push(Weight(alloc::vec![m]));
            }
            points.push(FixedPoint { label: pt.label.clone(), weights, sign: pt.sign });
        }
        Ok(LocalizationProblem { rank: 1, half_dim: self.half_dim, points })
    }
}
