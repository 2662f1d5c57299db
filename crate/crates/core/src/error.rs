use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("{what} has {size} vertices, above the exact-search bound {bound}")]
    SizeExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("outside the closed-form range: {0}")]
    OutOfRange(String),

    #[error("numeric solver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("embedding search exceeded its time budget of {seconds} s")]
    Timeout { seconds: f64 },

    #[error("clique spectrum is truncated: {0}")]
    Truncated(String),

    #[error("curve is not concave near p = {p}")]
    NotConcave { p: f64 },

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable tag, used for error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::SizeExceeded { .. } => "size_exceeded",
            Error::OutOfRange(_) => "out_of_range",
            Error::NoConvergence { .. } => "no_convergence",
            Error::Timeout { .. } => "timeout",
            Error::Truncated(_) => "truncated",
            Error::NotConcave { .. } => "not_concave",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
