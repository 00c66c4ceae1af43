//! IO side of `eqloc-core`: JSON problem and result documents, built-in space
//! identifiers, a rayon-backed localizer and the `eqloc` command line.

pub mod app;
pub mod document;
pub mod parallel;
pub mod space;

pub use document::{ProblemDocument, ResultDocument, Status};
pub use parallel::localize_parallel;
pub use space::parse_space;
