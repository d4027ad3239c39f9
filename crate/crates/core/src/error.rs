use thiserror::Error;

use crate::Node;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("alpha pair must satisfy 0 < alpha1 < alpha2 < 1/4, got ({alpha1}, {alpha2})")]
    InvalidAlphaPair { alpha1: f64, alpha2: f64 },

    #[error("probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),

    #[error("power-law exponent must lie in (0, 1), got {0}")]
    InvalidExponent(f64),

    #[error("relation index must be 1 or 2, got {0}")]
    InvalidRelation(i64),

    #[error("node count must be at least 1")]
    EmptyUniverse,

    #[error("node {node} is outside 1..={n}")]
    NodeOutOfRange { node: Node, n: usize },

    #[error("root set must be nonempty")]
    EmptyRoots,

    #[error("{0}")]
    ModelMismatch(String),

    #[error("invalid sentence `{0}`")]
    InvalidSentence(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("invalid configuration:\n  {}", .0.join("\n  "))]
    InvalidConfig(Vec<String>),
}
