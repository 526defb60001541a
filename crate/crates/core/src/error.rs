use thiserror::Error;

use crate::milnor::Sequence;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("monomial of degree {degree} exceeds the series degree bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("braid is not pure: strand starting at position {start} ends at position {end}")]
    NotPure { start: usize, end: usize },

    #[error("component counts differ: {left} vs {right}")]
    ComponentMismatch { left: usize, right: usize },

    #[error("crossing {crossing} joins components {over} and {under}, not a self-crossing")]
    NotSelfCrossing {
        crossing: usize,
        over: usize,
        under: usize,
    },

    #[error("winding word mentions its carrier component {carrier}")]
    WordMentionsCarrier { carrier: usize },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid injection {values:?}: {reason}")]
    InvalidInjection { values: Vec<usize>, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("table has no entry for sequence {0}")]
    MissingEntry(Sequence),

    #[error("canonical forms have different parameters: (m={m1}, n={n1}) vs (m={m2}, n={n2})")]
    FormMismatch {
        m1: usize,
        n1: u64,
        m2: usize,
        n2: u64,
    },

    #[error("criterion inapplicable: Δ^(n)({sequence}) = {delta_n} differs from n = {n}")]
    Inapplicable {
        sequence: Sequence,
        delta_n: num_bigint::BigInt,
        n: u64,
    },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
