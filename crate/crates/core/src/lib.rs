//! Exact evaluation of torus-equivariant localization sums.
//!
//! A torus `T = (S¹)^ℓ` acting on a compact oriented manifold with isolated
//! fixed points is described by its fixed-point data: at every fixed point, the
//! tangent weights (integer vectors, read as linear forms in `u₁, …, u_ℓ`) and an
//! orientation sign. The integral of an equivariant characteristic class is then
//!
//! ```text
//!     ∫_M ω = Σ_p  ω|_p / e(p)
//! ```
//!
//! where `e(p)` is the product of the weights at `p`. Every term is a rational
//! function whose denominator is a product of linear forms; the sum cancels to a
//! polynomial in the `uᵢ`. This crate performs that computation with exact
//! rational arithmetic and reports whether the cancellation actually happened.
//!
//! The crate is `no_std` and only needs `alloc`. IO, file formats and the
//! command line live in the companion `eqloc` crate.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod action;
pub mod arith;
pub mod class;
pub mod localize;
pub mod spaces;

pub use action::{FixedPoint, LocalizationProblem, ReduceError, Sign, ValidationError, Violation, Weight};
pub use arith::{
    ArithError, DivisionError, FactoredRational, LinearForm, Monomial, PolyParseError, Polynomial, Scalar,
};
pub use class::{ClassExpr, DegreeError, ParseDiagnostic};
pub use localize::{
    check_vanishing, euler_characteristic, integrate_top, localize, sum_in_order, sum_tree, LocalizationResult,
    LocalizeError, NotPolynomial, Vanishing,
};
