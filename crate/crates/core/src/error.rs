use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: duplicate letter `{letter}`")]
    DuplicateLetter { line: usize, letter: String },

    #[error("line {line}: relation {index} has an empty side")]
    EmptyRelationSide { line: usize, index: usize },

    #[error("line {line}: relation {index} ({relation}) is the reverse of relation {other}")]
    ReversedRelation {
        line: usize,
        index: usize,
        other: usize,
        relation: String,
    },

    #[error("line {line}: relation {index} ({relation}) duplicates relation {other}")]
    DuplicateRelation {
        line: usize,
        index: usize,
        other: usize,
        relation: String,
    },

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("empty word where a nonempty word is required")]
    EmptyWord,

    #[error("relation index {index} out of range (presentation has {count} relations)")]
    BadRelation { index: usize, count: usize },

    #[error("factor {step}: {side} does not occur at offset {offset} of `{word}`")]
    FactorMismatch {
        step: usize,
        offset: usize,
        side: String,
        word: String,
    },

    #[error("cannot concatenate: bottom `{bottom}` differs from top `{top}`")]
    WordMismatch { bottom: String, top: String },

    #[error("operands live over different presentations")]
    PresentationMismatch,

    #[error("operands have different bases (`{0}` vs `{1}`)")]
    BaseMismatch(String, String),

    #[error("diagram is not spherical: top `{top}`, bottom `{bottom}`")]
    NotSpherical { top: String, bottom: String },

    #[error("invalid cell id {0}")]
    InvalidCell(usize),

    #[error("coefficients sum to {0}, expected 0")]
    CoefficientSum(i64),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("negative index {0}")]
    NegativeIndex(i64),

    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    #[error("point count {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("degenerate sample set: {0}")]
    Degenerate(String),

    #[error("malformed diagram: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
