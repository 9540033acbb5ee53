use thiserror::Error;

use crate::spaces::SpaceTag;

/// Errors produced by the codecs, evaluators and verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("space tag mismatch: expected {expected}, found {found}")]
    TagMismatch { expected: SpaceTag, found: SpaceTag },
    #[error("unsupported operation: {0}")]
    UnsupportedOperation(String),
    #[error("stream exhausted at letter {index}")]
    StreamExhausted { index: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("inconsistent neighborhood: {0}")]
    InconsistentNeighborhood(String),
    #[error("basis violation: {0}")]
    BasisViolation(String),
    #[error("precondition violation: {0}")]
    PreconditionViolation(String),
    #[error("duplicate parameter set at position {0}")]
    DuplicateQ(usize),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("set is not closed: {0}")]
    NotClosed(String),
    #[error("presentation violation at depth {depth}: {reason}")]
    PresentationViolation { depth: usize, reason: String },
    #[error("domain violation at node {node}")]
    DomainViolation { node: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
