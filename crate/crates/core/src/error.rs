use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("scalars belong to different fields")]
    FieldMismatch,
    #[error("word {0:?} is not reduced")]
    NonReducedWord(Vec<usize>),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("permutation is not a minimal double coset representative")]
    NotMinimalRep,
    #[error("blocks do not compose: {0}")]
    BlockMismatch(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("colour sequences are not compatible")]
    IncompatibleSequences,
    #[error("operator is not in the algebra: {0}")]
    NotInAlgebra(String),
    #[error("label {0} is not of the form q^n Q_m")]
    LabelOutsideF(String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("invalid crossing: {0}")]
    InvalidCrossing(String),
    #[error("polynomial is not invariant under the required subgroup")]
    NotInvariant,
    #[error("characteristic must be 0 or exceed the rank")]
    CharacteristicTooSmall,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("pole at evaluation point: {0}")]
    PoleAtPoint(String),
    #[error("quotient dimension did not stabilize in window {0}")]
    WindowNotStabilized(usize),
    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("index error: {0}")]
    IndexError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
