use std::fmt;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    Domain(String),
    /// The input is structurally fine but fails a validation rule
    /// (e.g. a value list whose total sum is negative).
    Validation(String),
    /// The instance is larger than the exact-arithmetic capacity bounds.
    Capacity(String),
    /// A certificate hypothesis does not hold for the supplied weight
    /// function; `k` names the first offending nonnegative element.
    Hypothesis { k: usize, detail: String },
    /// A constructive search exhausted without producing the object it
    /// was required to produce.
    ConstructionFailure(String),
    /// An internal consistency check failed; this always indicates a bug.
    InvariantViolation(String),
    /// A text input (weight-function file) could not be parsed.
    Parse { line: usize, msg: String },
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Validation(msg) => write!(f, "validation error: {msg}"),
            Error::Capacity(msg) => write!(f, "capacity error: {msg}"),
            Error::Hypothesis { k, detail } => {
                write!(f, "hypothesis error at k={k}: {detail}")
            }
            Error::ConstructionFailure(msg) => write!(f, "construction failure: {msg}"),
            Error::InvariantViolation(msg) => write!(f, "invariant violation: {msg}"),
            Error::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
            Error::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
