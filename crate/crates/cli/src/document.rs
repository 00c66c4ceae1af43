//! JSON interchange formats.
//!
//! Problems are read as [`ProblemDocument`]s and results written as
//! [`ResultDocument`]s. Both carry `"format": 1`. All numbers are integers;
//! result coefficients are written as exact `[numerator, denominator]` pairs of
//! arbitrary size.

use std::str::FromStr;

use eqloc_core::{FactoredRational, FixedPoint, LocalizationProblem, Polynomial, Scalar, Sign, Weight};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

fn format_version() -> u32 {
    FORMAT_VERSION
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    #[serde(default = "format_version")]
    pub format: u32,
    pub torus_rank: usize,
    pub half_dim: usize,
    pub fixed_points: Vec<FixedPointDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedPointDocument {
    pub name: String,
    pub weights: Vec<Vec<i64>>,
    /// `+1` or `-1`; `+1` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i64>,
}

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("unsupported problem format {0}, expected {FORMAT_VERSION}")]
    Format(u32),
    #[error("fixed point {name:?}: sign must be +1 or -1, got {sign}")]
    Sign { name: String, sign: i64 },
    #[error(transparent)]
    Invalid(#[from] eqloc_core::ValidationError),
}

impl ProblemDocument {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem documents always serialize")
    }

    pub fn to_problem(&self) -> Result<LocalizationProblem, DocumentError> {
        if self.format != FORMAT_VERSION {
            return Err(DocumentError::Format(self.format));
        }
        let mut points = Vec::with_capacity(self.fixed_points.len());
        for fp in &self.fixed_points {
            let sign = match fp.sign {
                None => Sign::Positive,
                Some(s) => Sign::from_i64(s).ok_or_else(|| DocumentError::Sign { name: fp.name.clone(), sign: s })?,
            };
            let weights = fp.weights.iter().cloned().map(Weight::new).collect();
            points.push(FixedPoint::new(fp.name.clone(), weights, sign));
        }
        Ok(LocalizationProblem::new(self.torus_rank, self.half_dim, points)?)
    }

    pub fn from_problem(problem: &LocalizationProblem) -> Self {
        ProblemDocument {
            format: FORMAT_VERSION,
            torus_rank: problem.rank(),
            half_dim: problem.half_dim(),
            fixed_points: problem
                .points()
                .iter()
                .map(|p| FixedPointDocument {
                    name: p.label().to_string(),
                    weights: p.weights().iter().map(|w| w.coefficients().to_vec()).collect(),
                    sign: Some(p.sign().as_i64()),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Polynomial,
    NotPolynomial,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDocument {
    pub exponents: Vec<u32>,
    /// `[numerator, denominator]`, denominator positive.
    pub coefficient: [serde_json::Number; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorDocument {
    pub form: Vec<i64>,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointTermDocument {
    pub name: String,
    pub numerator: String,
    pub denominator: Vec<FactorDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub format: u32,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_degree: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<u64>,
    /// Canonical polynomial string of the integral.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_terms: Option<Vec<TermDocument>>,
    /// The scalar integral, for top-degree integrands.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_point_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vanishes: Option<bool>,
    /// The uncancelled sum when the result is not a polynomial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_point: Option<Vec<PointTermDocument>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ResultDocument {
    pub fn new(status: Status) -> Self {
        ResultDocument {
            format: FORMAT_VERSION,
            status,
            expr: None,
            torus_rank: None,
            class_degree: None,
            dimension: None,
            value: None,
            value_terms: None,
            top: None,
            fixed_point_count: None,
            vanishes: None,
            residual: None,
            per_point: None,
            error: None,
        }
    }

    pub fn error(message: impl Into<String>) -> Self {
        ResultDocument { error: Some(message.into()), ..Self::new(Status::Error) }
    }

    pub fn set_value(&mut self, value: &Polynomial) {
        self.torus_rank = Some(value.rank());
        self.value = Some(value.to_string());
        self.value_terms = Some(value_terms(value));
    }

    pub fn set_per_point(&mut self, terms: &[(String, FactoredRational)]) {
        self.per_point = Some(terms.iter().map(|(name, t)| point_term(name, t)).collect());
    }

    /// Reads `value` back; by construction identical to the polynomial it was
    /// written from.
    pub fn parsed_value(&self) -> Option<Polynomial> {
        Polynomial::parse(self.value.as_deref()?, self.torus_rank?).ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result documents always serialize")
    }
}

fn number(v: &num_bigint::BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&v.to_string()).expect("integers are valid JSON numbers")
}

pub fn scalar_pair(c: &Scalar) -> [serde_json::Number; 2] {
    [number(c.numer()), number(c.denom())]
}

fn value_terms(p: &Polynomial) -> Vec<TermDocument> {
    p.terms().map(|(m, c)| TermDocument { exponents: m.exponents().to_vec(), coefficient: scalar_pair(c) }).collect()
}

fn point_term(name: &str, t: &FactoredRational) -> PointTermDocument {
    PointTermDocument {
        name: name.to_string(),
        numerator: t.numerator().to_string(),
        denominator: t
            .denominator()
            .map(|(f, m)| FactorDocument { form: f.coefficients().to_vec(), multiplicity: m })
            .collect(),
    }
}
