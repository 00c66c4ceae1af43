//! The localization sum `Σ_p ω|_p / e(p)` and what can be read off from it.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use crate::action::{FixedPoint, LocalizationProblem, ValidationError};
use crate::arith::{FactoredRational, Polynomial, Scalar};
use crate::class::{ClassExpr, DegreeError, PointClasses};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationResult {
    /// The integral, a polynomial in `u₁, …, u_ℓ`.
    pub value: Polynomial,
    /// `ω|_p / e(p)` for each fixed point, in input order.
    pub per_point_terms: Vec<(String, FactoredRational)>,
    /// Cohomological degree of the integrand.
    pub class_degree: u64,
    /// Real dimension `2n` of the manifold.
    pub dimension: u64,
}

/// The per-point terms did not sum to a polynomial. The fixed-point data cannot
/// come from a genuine action, or the class is not equivariantly closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotPolynomial {
    pub sum: FactoredRational,
    pub per_point_terms: Vec<(String, FactoredRational)>,
    pub class_degree: u64,
    pub dimension: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalizeError {
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error("class has degree {found}, expected the manifold dimension {expected}")]
    DegreeMismatch { expected: u64, found: u64 },
    #[error("class has degree {degree}, which is not below the manifold dimension {dimension}")]
    NotBelowDimension { degree: u64, dimension: u64 },
    #[error("localization sum does not cancel to a polynomial: {}", .0.sum)]
    NotPolynomial(Box<NotPolynomial>),
    #[error("integral of the Euler class is {integral}, but there are {fixed_points} fixed points")]
    EulerMismatch { fixed_points: usize, integral: Scalar },
}

/// Outcome of [`check_vanishing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Vanishing {
    Vanishes,
    Counterexample(Polynomial),
}

/// Validates the problem and returns the homogeneous degree of `expr` on it.
pub fn class_degree(problem: &LocalizationProblem, expr: &ClassExpr) -> Result<u64, LocalizeError> {
    problem.validate()?;
    Ok(expr.degree(problem.half_dim())?)
}

/// `expr|_p / e(p)` as a cancelled factored rational.
pub fn point_term(problem: &LocalizationProblem, expr: &ClassExpr, point: &FixedPoint) -> FactoredRational {
    let restricted = PointClasses::new(point, problem.rank()).eval(expr);
    point.divide_by_euler(restricted)
}

/// Left-to-right sum.
pub fn sum_in_order<'a, I>(rank: usize, terms: I) -> FactoredRational
where
    I: IntoIterator<Item = &'a FactoredRational>,
{
    terms.into_iter().fold(FactoredRational::from_polynomial(Polynomial::zero(rank)), |acc, t| {
        acc.try_add(t).expect("terms share the problem's rank")
    })
}

/// Balanced pairwise sum. Equal to [`sum_in_order`] by exactness.
pub fn sum_tree(rank: usize, terms: &[FactoredRational]) -> FactoredRational {
    match terms {
        [] => FactoredRational::from_polynomial(Polynomial::zero(rank)),
        [single] => single.clone(),
        _ => {
            let (left, right) = terms.split_at(terms.len() / 2);
            sum_tree(rank, left).try_add(&sum_tree(rank, right)).expect("terms share the problem's rank")
        }
    }
}

/// Packages a computed sum, failing if it is not a polynomial.
pub fn assemble(
    problem: &LocalizationProblem,
    class_degree: u64,
    per_point_terms: Vec<(String, FactoredRational)>,
    sum: FactoredRational,
) -> Result<LocalizationResult, LocalizeError> {
    let dimension = problem.dimension();
    match sum.into_polynomial() {
        Ok(value) => Ok(LocalizationResult { value, per_point_terms, class_degree, dimension }),
        Err(sum) => {
            Err(LocalizeError::NotPolynomial(Box::new(NotPolynomial { sum, per_point_terms, class_degree, dimension })))
        }
    }
}

/// Evaluates `∫_M expr` by summing over fixed points.
pub fn localize(problem: &LocalizationProblem, expr: &ClassExpr) -> Result<LocalizationResult, LocalizeError> {
    let degree = class_degree(problem, expr)?;
    let per_point_terms: Vec<(String, FactoredRational)> =
        problem.points().iter().map(|pt| (String::from(pt.label()), point_term(problem, expr, pt))).collect();
    let sum = sum_in_order(problem.rank(), per_point_terms.iter().map(|(_, t)| t));
    assemble(problem, degree, per_point_terms, sum)
}

/// The ordinary integral of a class of top degree.
pub fn integrate_top(problem: &LocalizationProblem, expr: &ClassExpr) -> Result<Scalar, LocalizeError> {
    let degree = class_degree(problem, expr)?;
    if degree != problem.dimension() {
        return Err(LocalizeError::DegreeMismatch { expected: problem.dimension(), found: degree });
    }
    let result = localize(problem, expr)?;
    Ok(result.value.as_constant().expect("top-degree integral of a homogeneous class is constant"))
}

/// `χ(M) = ∫_M e`, checked against the number of fixed points.
pub fn euler_characteristic(problem: &LocalizationProblem) -> Result<usize, LocalizeError> {
    let integral = integrate_top(problem, &ClassExpr::Euler)?;
    let fixed_points = problem.points().len();
    if integral != Scalar::from_integer(fixed_points.into()) {
        return Err(LocalizeError::EulerMismatch { fixed_points, integral });
    }
    Ok(fixed_points)
}

/// Checks that a class of degree below the dimension integrates to zero.
pub fn check_vanishing(problem: &LocalizationProblem, expr: &ClassExpr) -> Result<Vanishing, LocalizeError> {
    let degree = class_degree(problem, expr)?;
    if degree >= problem.dimension() {
        return Err(LocalizeError::NotBelowDimension { degree, dimension: problem.dimension() });
    }
    let result = localize(problem, expr)?;
    if result.value.is_zero() {
        Ok(Vanishing::Vanishes)
    } else {
        Ok(Vanishing::Counterexample(result.value))
    }
}
