//! Characteristic-class expressions in `c₁, c₂, …` and `e`.
//!
//! An expression is evaluated at a fixed point by sending `c_k` to the k-th
//! elementary symmetric polynomial of the tangent weights and `e` to the
//! equivariant Euler class.

mod parse;

pub use parse::ParseDiagnostic;

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::action::FixedPoint;
use crate::arith::{Polynomial, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClassExpr {
    Integer(BigUint),
    /// `c_k`, `k ≥ 1`.
    Chern(u32),
    Euler,
    Sum(Box<ClassExpr>, Box<ClassExpr>),
    Difference(Box<ClassExpr>, Box<ClassExpr>),
    Product(Box<ClassExpr>, Box<ClassExpr>),
    Power(Box<ClassExpr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DegreeError {
    #[error("inhomogeneous expression: terms of degree {left} and {right}")]
    Inhomogeneous { left: u64, right: u64 },
    #[error("degree overflows 64 bits")]
    Overflow,
}

impl ClassExpr {
    pub fn parse(text: &str) -> Result<ClassExpr, ParseDiagnostic> {
        parse::parse(text)
    }

    pub fn int(v: u64) -> ClassExpr {
        ClassExpr::Integer(BigUint::from(v))
    }

    pub fn sum(a: ClassExpr, b: ClassExpr) -> ClassExpr {
        ClassExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn difference(a: ClassExpr, b: ClassExpr) -> ClassExpr {
        ClassExpr::Difference(Box::new(a), Box::new(b))
    }

    pub fn product(a: ClassExpr, b: ClassExpr) -> ClassExpr {
        ClassExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn power(a: ClassExpr, k: u32) -> ClassExpr {
        ClassExpr::Power(Box::new(a), k)
    }

    /// Cohomological degree, with `deg c_k = 2k`, `deg e = 2n` and literals of
    /// degree 0. Every additive term must have the same degree.
    pub fn degree(&self, half_dim: usize) -> Result<u64, DegreeError> {
        match self {
            ClassExpr::Integer(_) => Ok(0),
            ClassExpr::Chern(k) => Ok(2 * u64::from(*k)),
            ClassExpr::Euler => (half_dim as u64).checked_mul(2).ok_or(DegreeError::Overflow),
            ClassExpr::Sum(a, b) | ClassExpr::Difference(a, b) => {
                let (left, right) = (a.degree(half_dim)?, b.degree(half_dim)?);
                if left == right {
                    Ok(left)
                } else {
                    Err(DegreeError::Inhomogeneous { left, right })
                }
            }
            ClassExpr::Product(a, b) => {
                a.degree(half_dim)?.checked_add(b.degree(half_dim)?).ok_or(DegreeError::Overflow)
            }
            ClassExpr::Power(a, k) => a.degree(half_dim)?.checked_mul(u64::from(*k)).ok_or(DegreeError::Overflow),
        }
    }

    /// Restriction to a fixed point of a rank-`rank` torus action.
    pub fn restrict(&self, point: &FixedPoint, rank: usize) -> Polynomial {
        PointClasses::new(point, rank).eval(self)
    }
}

/// Chern and Euler classes at one fixed point, computed once and reused while
/// evaluating an expression.
pub struct PointClasses {
    rank: usize,
    /// `elementary[k]` is `e_k(w₁, …, w_n)`; `elementary[0] = 1`.
    elementary: Vec<Polynomial>,
    euler: Polynomial,
}

impl PointClasses {
    pub fn new(point: &FixedPoint, rank: usize) -> Self {
        let n = point.weights().len();
        let mut elementary = alloc::vec![Polynomial::zero(rank); n + 1];
        elementary[0] = Polynomial::one(rank);
        for (i, w) in point.weights().iter().enumerate() {
            let w = w.to_polynomial();
            for k in (1..=i + 1).rev() {
                let shifted = &elementary[k - 1] * &w;
                elementary[k] = &elementary[k] + &shifted;
            }
        }
        PointClasses { rank, elementary, euler: point.euler_class(rank) }
    }

    pub fn chern(&self, k: u32) -> Polynomial {
        self.elementary.get(k as usize).cloned().unwrap_or_else(|| Polynomial::zero(self.rank))
    }

    pub fn eval(&self, expr: &ClassExpr) -> Polynomial {
        match expr {
            ClassExpr::Integer(v) => Polynomial::constant(self.rank, Scalar::from_integer(v.clone().into())),
            ClassExpr::Chern(k) => self.chern(*k),
            ClassExpr::Euler => self.euler.clone(),
            ClassExpr::Sum(a, b) => &self.eval(a) + &self.eval(b),
            ClassExpr::Difference(a, b) => &self.eval(a) - &self.eval(b),
            ClassExpr::Product(a, b) => &self.eval(a) * &self.eval(b),
            ClassExpr::Power(a, k) => self.eval(a).pow(*k),
        }
    }
}

impl ClassExpr {
    fn is_additive(&self) -> bool {
        matches!(self, ClassExpr::Sum(..) | ClassExpr::Difference(..))
    }

    fn is_atom(&self) -> bool {
        matches!(self, ClassExpr::Integer(_) | ClassExpr::Chern(_) | ClassExpr::Euler)
    }
}

/// Canonical form: minimal parentheses for the left-associative grammar,
/// explicit `*`, and single spaces around `+` and `-`.
impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassExpr::Integer(v) => write!(f, "{v}"),
            ClassExpr::Chern(k) => write!(f, "c{k}"),
            ClassExpr::Euler => f.write_str("e"),
            ClassExpr::Sum(a, b) | ClassExpr::Difference(a, b) => {
                let op = if matches!(self, ClassExpr::Sum(..)) { "+" } else { "-" };
                if b.is_additive() {
                    write!(f, "{a} {op} ({b})")
                } else {
                    write!(f, "{a} {op} {b}")
                }
            }
            ClassExpr::Product(a, b) => {
                if a.is_additive() {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                if b.is_additive() || matches!(**b, ClassExpr::Product(..)) {
                    write!(f, "*({b})")
                } else {
                    write!(f, "*{b}")
                }
            }
            ClassExpr::Power(a, k) => {
                if a.is_atom() {
                    write!(f, "{a}^{k}")
                } else {
                    write!(f, "({a})^{k}")
                }
            }
        }
    }
}
