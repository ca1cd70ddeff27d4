use thiserror::Error;

use crate::poly::Poly;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("exponent at byte {pos} is not a non-negative integer literal")]
    NonIntegerExponent { pos: usize },
    #[error("coefficient fields differ")]
    FieldMismatch,
    #[error("variable lists differ")]
    VariableListMismatch,
    #[error("monomial orders differ")]
    OrderMismatch,
    #[error("not divisible; remainder {remainder}")]
    NotDivisible { remainder: Box<Poly> },
    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("non-homogeneous input: {0}")]
    NonHomogeneousInput(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("minor size {r} exceeds min(rows, cols) = {max}")]
    RankTooLarge { r: usize, max: usize },
    #[error("zero matrix has no divisor")]
    ZeroMatrix,
    #[error("characteristic {characteristic} divides degree {degree}")]
    CharDividesDegree { characteristic: u64, degree: u32 },
    #[error("column {column} is not a syzygy of the Jacobian")]
    NotASyzygy { column: usize },
    #[error("sequence is algebraically dependent; relation {witness}")]
    IndependenceFailed { witness: Box<Poly> },
    #[error("alpha*gamma has generic rank {rank} < {cols} columns")]
    GammaNotMono { rank: usize, cols: usize },
    #[error("field has characteristic zero")]
    CharZero,
    #[error("expected {expected} polynomials, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("characteristic {p} does not divide deg(f_{index}) = {degree}")]
    DegreeNotDivisible { index: usize, degree: u32, p: u64 },
    #[error("Jacobian has generic rank {rank}, expected {expected}")]
    JacobianRankDeficient { rank: usize, expected: usize },
    #[error("variable `{0}` appears in more than one block")]
    OverlappingBlocks(String),
    #[error("variables not covered by any block: {0:?}")]
    UncoveredVariables(Vec<String>),
    #[error("Buchberger exceeded the pair limit of {0}")]
    PairLimitExceeded(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable code used in CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::DivisionByZero => "DivisionByZero",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownVariable { .. } => "UnknownVariable",
            Error::NonIntegerExponent { .. } => "NonIntegerExponent",
            Error::FieldMismatch => "FieldMismatch",
            Error::VariableListMismatch => "VariableListMismatch",
            Error::OrderMismatch => "OrderMismatch",
            Error::NotDivisible { .. } => "NotDivisible",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NonHomogeneousInput(_) => "NonHomogeneousInput",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotSquare { .. } => "NotSquare",
            Error::RankTooLarge { .. } => "RankTooLarge",
            Error::ZeroMatrix => "ZeroMatrix",
            Error::CharDividesDegree { .. } => "CharDividesDegree",
            Error::NotASyzygy { .. } => "NotASyzygy",
            Error::IndependenceFailed { .. } => "IndependenceFailed",
            Error::GammaNotMono { .. } => "GammaNotMono",
            Error::CharZero => "CharZero",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::DegreeNotDivisible { .. } => "DegreeNotDivisible",
            Error::JacobianRankDeficient { .. } => "JacobianRankDeficient",
            Error::OverlappingBlocks(_) => "OverlappingBlocks",
            Error::UncoveredVariables(_) => "UncoveredVariables",
            Error::PairLimitExceeded(_) => "PairLimitExceeded",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// Byte offset into the parsed text, for parse errors.
    pub fn location(&self) -> Option<usize> {
        match self {
            Error::Syntax { pos, .. } | Error::UnknownVariable { pos, .. } | Error::NonIntegerExponent { pos } => Some(*pos),
            _ => None,
        }
    }
}
