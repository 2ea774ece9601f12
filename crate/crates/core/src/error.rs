use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero at {path} (divisor `{divisor}`)")]
    DivisionByZero { path: String, divisor: String },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("shape error in {matrix}: expected {expected}, found {actual}")]
    Shape {
        matrix: String,
        expected: String,
        actual: String,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a complex: {0}")]
    NotAComplex(String),

    #[error("prescribed subspace does not complement the kernel: {0}")]
    NotComplement(String),

    #[error("not a basis of homology representatives: {0}")]
    NotRepresentative(String),

    #[error("sampling exhausted after {attempts} attempts")]
    SamplingExhausted { attempts: usize },

    #[error("invalid parameter point: {}", .0.join(", "))]
    InvalidPoint(Vec<String>),

    #[error("invalid structure constants: {0}")]
    InvalidStructureConstants(String),

    #[error("span check failed: {0}")]
    SpanCheckFailed(String),

    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),

    #[error("missing page map from {from:?} to {to:?} on page {page}")]
    MissingMap {
        page: usize,
        from: (usize, usize),
        to: (usize, usize),
    },

    #[error("ledger incomplete: {0}")]
    LedgerIncomplete(String),

    #[error("contraction does not match complex: {0}")]
    ContractionMismatch(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    pub(crate) fn shape(
        matrix: impl Into<String>,
        expected: impl std::fmt::Display,
        actual: impl std::fmt::Display,
    ) -> Self {
        Error::Shape {
            matrix: matrix.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}
