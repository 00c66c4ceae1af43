//! Multi-threaded localization.

use eqloc_core::localize::{assemble, class_degree, point_term, sum_in_order};
use eqloc_core::{ClassExpr, FactoredRational, LocalizationProblem, LocalizationResult, LocalizeError, Polynomial};
use rayon::prelude::*;

/// Same contract as [`eqloc_core::localize`]: per-point terms are built in
/// parallel and reduced as a tree. The tree sum is checked against the
/// in-order sum, which exact arithmetic makes identical.
pub fn localize_parallel(problem: &LocalizationProblem, expr: &ClassExpr) -> Result<LocalizationResult, LocalizeError> {
    let degree = class_degree(problem, expr)?;
    let rank = problem.rank();
    let per_point_terms: Vec<(String, FactoredRational)> =
        problem.points().par_iter().map(|pt| (pt.label().to_string(), point_term(problem, expr, pt))).collect();
    let zero = || FactoredRational::from_polynomial(Polynomial::zero(rank));
    let tree = per_point_terms
        .par_iter()
        .map(|(_, t)| t.clone())
        .reduce(zero, |a, b| a.try_add(&b).expect("terms share the problem's rank"));
    let ordered = sum_in_order(rank, per_point_terms.iter().map(|(_, t)| t));
    assert_eq!(tree, ordered, "parallel and sequential localization sums differ");
    assemble(problem, degree, per_point_terms, tree)
}
