use thiserror::Error;

use crate::qcoeff::QError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("position {pos} out of range for arity {arity}")]
    PositionOutOfRange { pos: usize, arity: usize },
    #[error("{kind} requested at leg {pos} of {arity}; coactions only act on the {edge} leg")]
    InteriorCoaction { kind: &'static str, pos: usize, arity: usize, edge: &'static str },
    #[error("{kind} applied to leg {pos}, which is not a word over its coideal alphabet")]
    NotAWord { kind: &'static str, pos: usize },
    #[error("invalid index set: {0}")]
    InvalidSet(String),
    #[error("split index {j} out of range 1..={len}")]
    SplitOutOfRange { j: usize, len: usize },
    #[error("empty set has no extension plan")]
    EmptySet,
    #[error("plan is invalid: {0}")]
    InvalidPlan(String),
    #[error("no consistent solution: {0}")]
    Inconsistent(String),
    #[error("degenerate evaluation point {0}")]
    DegeneratePoint(String),
    #[error("malformed element: {0}")]
    Malformed(String),
    #[error(transparent)]
    Coeff(#[from] QError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
