//! Exact analysis of the parametrized exponential maps
//! `F_c(x) = W (c ∘ exp(W̃ᵀ x))` for all positive `c`.
//!
//! The crate decides injectivity, bijectivity and robust bijectivity from the
//! sign vectors of `ker W` and `ker W̃`, attaches an exactly checkable
//! certificate to every verdict, applies the same criteria to generalized
//! mass-action reaction networks, and carries a floating-point Newton solver
//! for cross-checking.

pub mod analyzer;
pub mod certificate;
pub mod cli;
pub mod crn;
pub mod error;
pub mod json;
pub mod linalg;
pub mod matroid;
pub mod nondegeneracy;
pub mod numeric;
pub mod polyhedral;
pub mod ray;
pub mod report;
pub mod sign;
pub mod simplex;
pub mod spec;
pub mod verdict;

pub use analyzer::{analyze, Analysis, Analyzer, RobustSelection};
pub use certificate::Certificate;
pub use error::{Error, Result};
pub use linalg::{Rational, RationalMatrix, SubspaceBasis};
pub use report::{verify_certificate, Report};
pub use sign::{Sign, SignVector, SignVectorSet};
pub use spec::{Caps, ExponentialMapSpec};
pub use verdict::{Classification, ConditionVerdict, Status};
