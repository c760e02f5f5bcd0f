//! The coideal subalgebra `U^ι ⊂ U`: generators, idivided powers, the Frobenius center at an odd
//! root of unity and its Poisson structure.

mod braidfrob;
mod frobenius;
mod generators;
mod poisson;
mod smalldim;

use thiserror::Error;

use crate::qcoeff::QError;
use crate::satake::SatakeError;
use crate::uq::UqError;

pub use braidfrob::{braid_frobenius_check, BraidFrobeniusReport, RankTwoCase};
pub use frobenius::{
    centrality_check, check_level, frobenius_center_generators, frobenius_generator_check, frobenius_report,
    product_rule_check, CheckReport, FrobeniusGenerator,
};
pub use generators::{DividedCase, IQuantum, IqgElement, Origin, PrefactorBase};
pub use smalldim::{small_iqg_dim_check, SmallDimReport};
pub use poisson::{
    at_one, bracket_lift, poisson_bracket_at_one, poisson_bracket_at_root, poisson_bracket_literal, BracketMode,
    ClassicalElement,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IqgError {
    #[error("node {0} out of range")]
    BadNode(usize),
    #[error("node {0} is black")]
    BlackNode(usize),
    #[error("level {ell} rejected: {reason}")]
    Level { ell: u32, reason: String },
    #[error("{0}")]
    Unsupported(String),
    #[error("{check} fails; difference {diff}")]
    Mismatch { check: String, diff: String },
    #[error(transparent)]
    Uq(#[from] UqError),
    #[error(transparent)]
    Satake(#[from] SatakeError),
}

impl From<QError> for IqgError {
    fn from(e: QError) -> Self {
        IqgError::Uq(UqError::Scalar(e))
    }
}
