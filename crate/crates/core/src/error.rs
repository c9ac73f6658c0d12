use std::fmt;

/// Crate-wide error type. Every variant is an input-validation failure or a
/// precondition violation; the library itself never panics on valid input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A rational string could not be parsed.
    ParseRational(String),
    /// A domain invariant was violated; the message points at the field.
    Invariant(String),
    /// An operation precondition was not met.
    Precondition(String),
    /// Data required by the operation was not supplied.
    MissingData(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ParseRational(s) => write!(f, "cannot parse rational: {s}"),
            Error::Invariant(s) => write!(f, "invariant violation: {s}"),
            Error::Precondition(s) => write!(f, "precondition failed: {s}"),
            Error::MissingData(s) => write!(f, "missing data: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
