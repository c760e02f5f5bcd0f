//! The shipped diagram fixtures.

use crate::satake::{SatakeDiagram, SatakeError};

const FILES: &[(&str, &str)] = &[
    ("split_a1", include_str!("../../../catalog/split_a1.json")),
    ("split_a2", include_str!("../../../catalog/split_a2.json")),
    ("split_b2", include_str!("../../../catalog/split_b2.json")),
    ("quasisplit_a2", include_str!("../../../catalog/quasisplit_a2.json")),
    ("quasisplit_a3", include_str!("../../../catalog/quasisplit_a3.json")),
    ("diagonal_a1xa1", include_str!("../../../catalog/diagonal_a1xa1.json")),
    ("a3_black2", include_str!("../../../catalog/a3_black2.json")),
    ("quasisplit_a4", include_str!("../../../catalog/quasisplit_a4.json")),
    ("a4_black23", include_str!("../../../catalog/a4_black23.json")),
];

/// Names of the core catalog. `quasisplit_a4` and `a4_black23` are extra fixtures beyond rank 3.
pub const CORE: &[&str] = &[
    "split_a1",
    "split_a2",
    "split_b2",
    "quasisplit_a2",
    "quasisplit_a3",
    "diagonal_a1xa1",
    "a3_black2",
];

pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn load(name: &str) -> Result<SatakeDiagram, SatakeError> {
    let src = source(name).ok_or_else(|| SatakeError::Malformed(format!("no catalog entry `{name}`")))?;
    SatakeDiagram::from_json(src)
}

pub fn core() -> Vec<SatakeDiagram> {
    CORE.iter().map(|n| load(n).expect("catalog entries are valid")).collect()
}
