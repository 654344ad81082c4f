use thiserror::Error;

/// Errors raised by the relation, matrix, tower and groupoid layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("index ({i}, {j}) out of range for size {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },

    #[error("size must be positive")]
    ZeroSize,

    #[error("relation is not reflexive at index {0}")]
    NotReflexive(usize),

    #[error("relation is not transitive: ({0}, {1}) and ({1}, {2}) present but ({0}, {2}) missing")]
    NotTransitive(usize, usize, usize),

    #[error("pair ({0}, {1}) is not contained in the ambient relation")]
    NotContained(usize, usize),

    #[error("pair set is not an ideal: ({0}, {1}) missing after absorption")]
    NotAnIdeal(usize, usize),

    #[error("{what} bound exceeded: {value} > {limit}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("fixed point not reached within {0} iterations")]
    NoFixedPoint(usize),

    #[error("matrix is not a normalising partial isometry: {0}")]
    NotNormalising(String),

    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,

    #[error("level mismatch: {0}")]
    LevelMismatch(String),

    #[error("depth mismatch: expected {expected}, found {found}")]
    DepthMismatch { expected: usize, found: usize },

    #[error("letter {letter} at position {position} outside alphabet of size {size}")]
    LetterOutOfRange {
        position: usize,
        letter: usize,
        size: usize,
    },

    #[error("not a G-set: {0}")]
    NotAGSet(String),

    #[error("G-sets overlap at index {0} and {1}")]
    Overlap(usize, usize),

    #[error("ordering violated at position {0}")]
    OrderingViolated(usize),

    #[error("value does not fit the interchange format: {0}")]
    Encoding(String),
}

pub type Result<T> = std::result::Result<T, Error>;
