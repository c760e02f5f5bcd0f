//! The quantum group `U` at small rank: normal forms `K_μ · F-word · E-word`, braid operators,
//! root vectors and specialization at a root of unity.

mod algebra;
mod braid;
mod confluence;
mod element;
mod rewrite;

use thiserror::Error;

use crate::qcoeff::QError;
use crate::rootdata::RootError;

pub use algebra::{Letter, UqAlgebra, MAX_RANK};
pub use confluence::{braid_suite, confluence_suite, coxeter_exponent, BraidReport, ConfluenceReport};
pub use element::{Monomial, UqElement};
pub use rewrite::{deglex, serre_relation, RewriteSystem, Rule, Word};

/// Default overlap bound for Serre completion.
pub const DEFAULT_BOUND: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UqError {
    #[error("rank {0} exceeds the engine limit")]
    RankTooLarge(usize),
    #[error("word of length {len} exceeds the completion bound {bound}")]
    BoundExceeded { len: usize, bound: usize },
    #[error("node {0} out of range")]
    BadNode(usize),
    #[error("weight has {got} coordinates, expected {want}")]
    WeightLength { got: usize, want: usize },
    #[error("coefficient of {monomial} has a pole at the specialization point")]
    Pole { monomial: String },
    #[error("word is not reduced")]
    NotReduced,
    #[error("cannot parse element: {0}")]
    Parse(String),
    #[error(transparent)]
    Scalar(#[from] QError),
    #[error(transparent)]
    Root(#[from] RootError),
}
