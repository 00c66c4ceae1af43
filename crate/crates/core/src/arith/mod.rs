//! Exact arithmetic in `ℚ[u₁, …, u_ℓ]` and in its localization at products of
//! linear forms.

mod frac;
mod linear;
mod poly;
mod render;

pub use frac::FactoredRational;
pub use linear::{DivisionError, LinearForm};
pub use poly::{Monomial, Polynomial};
pub use render::PolyParseError;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("linear form has no nonzero coefficient")]
    ZeroForm,
    #[error("linear form {form} vanishes under the substitution")]
    DegenerateSubstitution { form: LinearForm },
}

pub(crate) fn scalar_from_i64(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub(crate) fn check_rank(left: usize, right: usize) -> Result<(), ArithError> {
    if left == right {
        Ok(())
    } else {
        Err(ArithError::RankMismatch { left, right })
    }
}
