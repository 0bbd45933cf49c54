use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// The target cochain is not a relative coboundary.
    NotACoboundary,
    /// The target chain is not a relative boundary.
    NotABoundary,
    /// The complex exceeds the desk-scale enumeration cap.
    TooLarge { count: usize, cap: usize },
    /// Malformed complex data.
    BadComplex(String),
    /// Malformed text input.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotACoboundary => write!(f, "target is not a relative coboundary"),
            Error::NotABoundary => write!(f, "target is not a relative boundary"),
            Error::TooLarge { count, cap } => {
                write!(f, "{count} simplices in the active dimension exceed the cap {cap}")
            }
            Error::BadComplex(msg) => write!(f, "bad complex: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
