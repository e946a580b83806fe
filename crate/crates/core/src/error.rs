use thiserror::Error;

use crate::rings::RingSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingSpec, RingSpec),
    #[error("{value} is not a unit in {ring}")]
    NotAUnit { value: String, ring: RingSpec },
    #[error("ring {0} is infinite")]
    InfiniteRing(RingSpec),
    #[error("cannot parse ring spec {input:?}: {reason}")]
    RingParse { input: String, reason: String },
    #[error("cannot parse element {input:?} of {ring}: {reason}")]
    ElemParse {
        input: String,
        ring: RingSpec,
        reason: String,
    },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("algebra spec mismatch: {0} vs {1}")]
    SpecMismatch(String, String),
    #[error("invalid algebra ({field}): {reason}")]
    InvalidAlgebra { field: String, reason: String },
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("2 is not a unit in {0}")]
    CharTwo(RingSpec),
    #[error("quadratic form is singular")]
    Singular,
    #[error("element does not have norm one")]
    NotNormOne,
    #[error("operation requires an associative algebra, got {0}")]
    NonAssociativeKind(String),
    #[error("map does not preserve the quadratic form")]
    NotOrthogonal,
    #[error("unsupported ring {ring}: {reason}")]
    UnsupportedRing { ring: RingSpec, reason: String },
    #[error("work budget of {0} units exceeded")]
    BudgetExceeded(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
