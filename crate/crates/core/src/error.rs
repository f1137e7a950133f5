use thiserror::Error;

use crate::puiseux::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("zero denominator at position {position}")]
    ZeroDenominator { position: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("value has negative valuation {0} and lies outside the valuation ring")]
    OutsideValuationRing(Rational),

    #[error("generators are dependent over the integers")]
    DependentGenerators,

    #[error("empty generator list")]
    EmptyBasis,

    #[error("the offset lies in the subgroup")]
    OffsetInSubgroup,

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("entry ({row}, {col}) out of range for size {size}")]
    IndexOutOfRange { row: usize, col: usize, size: usize },

    #[error("matrix is not in term {depth} of the lower central series")]
    BelowDepth { depth: usize },

    #[error("the identity is not allowed here")]
    IdentityNotAllowed,

    #[error("the matrices do not commute")]
    NonCommuting,

    #[error("zero argument")]
    ZeroArgument,

    #[error("domain tag mismatch: {0}")]
    TagMismatch(String),

    #[error("modulus must be at least 1")]
    InvalidModulus,

    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),

    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
