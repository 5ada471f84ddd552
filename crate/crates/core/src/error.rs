use thiserror::Error;

/// Errors raised by the forest, diagram, prefix-map and operad layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity must be at least 2, got {0}")]
    InvalidArity(usize),
    #[error("a forest needs at least one root")]
    NoRoots,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("root count mismatch: expected {expected}, found {found}")]
    RootMismatch { expected: usize, found: usize },
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("leaf count mismatch: {0}")]
    LeafCountMismatch(String),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("forest does not refine the given forest")]
    NotARefinement,
    #[error("invalid address cover: {0}")]
    InvalidCover(String),
    #[error("insufficient depth: no rule applies to word {0}")]
    InsufficientDepth(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("invalid cut data: {0}")]
    InvalidCut(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
