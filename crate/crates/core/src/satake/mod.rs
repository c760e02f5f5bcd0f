//! Satake diagrams, the involution θ, the lattices `P^θ` and `P^ι`, adapted words and invariants.

mod diagram;
mod structure;

use thiserror::Error;

use crate::rootdata::RootError;

pub use diagram::{validate_satake, DiagramSpec, SatakeDiagram, Violation};
pub use structure::{AdaptedWord, RelativeReflection, RelativeStructure, SatakeInvariants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatakeError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("not a Satake diagram: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("default signs are inadmissible, supply `signs`: {}", join(.0))]
    SignsRequired(Vec<Violation>),
    #[error("bad adapted word: {0}")]
    BadWord(String),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
