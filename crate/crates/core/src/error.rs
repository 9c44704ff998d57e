use thiserror::Error;

/// Location-aware parse failure for the monomial, ideal and graph text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { divisor: String, dividend: String },

    #[error("operation undefined for the zero ideal")]
    ZeroIdeal,

    #[error("operation undefined for the unit ideal")]
    UnitIdeal,

    #[error("invalid expansion tuple: {0}")]
    InvalidTuple(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not a member of the ideal")]
    NotInIdeal(String),

    #[error("ordering does not have linear quotients: {0}")]
    NotLinearQuotients(String),

    #[error("resource cap exceeded: {what} ({got} > {cap})")]
    CapExceeded { what: String, got: usize, cap: usize },

    #[error("degree mismatch in graded map: {0}")]
    DegreeMismatch(String),

    #[error("not a complex: {0}")]
    NotAComplex(String),

    #[error("not acyclic: {0}")]
    NotAcyclic(String),

    #[error("complex is not minimal: {0}")]
    NotMinimal(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
