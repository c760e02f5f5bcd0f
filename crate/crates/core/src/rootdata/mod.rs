//! Finite-type Cartan data, weights, Weyl groups and convex orders.

mod cartan;
mod weight;
mod weyl;

use thiserror::Error;

pub use cartan::{CartanDatum, CartanSpec};
pub use weight::{Half, Weight};
pub use weyl::{longest_word, Root, RootSystem, WeylElement, WeylWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("unknown Cartan type `{0}`")]
    UnknownType(String),
    #[error("malformed Cartan datum: {0}")]
    Malformed(String),
    #[error("Cartan matrix is not of finite type")]
    NotFiniteType,
    #[error("node index {0} out of range")]
    BadIndex(usize),
    #[error("word {0} is not reduced")]
    NotReduced(String),
    #[error("word has length {got}, but the longest element has length {want}")]
    NotLongest { got: usize, want: usize },
}
