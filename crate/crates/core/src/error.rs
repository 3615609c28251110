use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid {what} at position {position}: {message}")]
    Validation {
        what: &'static str,
        position: usize,
        message: String,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("lookup failed: {0}")]
    Lookup(String),

    #[error("preprocessing incomplete: {0}")]
    PreprocessIncomplete(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("cache error: {0}")]
    Cache(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::Input(_) => "input",
            Error::Parse { .. } => "parse",
            Error::Validation { .. } => "validation",
            Error::Config(_) => "config",
            Error::Lookup(_) => "lookup",
            Error::PreprocessIncomplete(_) => "preprocess_incomplete",
            Error::Invariant(_) => "invariant",
            Error::Cache(_) => "cache",
        }
    }

    /// True for failures caused by the caller's input or configuration,
    /// as opposed to broken internal invariants.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::Lookup(_) | Error::PreprocessIncomplete(_) | Error::Invariant(_)
        )
    }
}
