use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("inadmissible coloring: {0}")]
    Inadmissible(String),
    #[error("cancellation in graded sum (relative leading magnitude {relative:.3e})")]
    Cancellation { relative: f64 },
    #[error("evaluation regime violation: {0}")]
    Regime(String),
    #[error("branch tracking failed: {0}")]
    Branch(String),
    #[error("non-hyperbolic data: {0}")]
    NonHyperbolic(String),
    #[error("fit failed: {0}")]
    FitFailure(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("graph error: {0}")]
    Graph(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn out_of_range(msg: impl Into<String>) -> Self {
        Error::OutOfRange(msg.into())
    }
    pub fn inadmissible(msg: impl Into<String>) -> Self {
        Error::Inadmissible(msg.into())
    }
    pub fn graph(msg: impl Into<String>) -> Self {
        Error::Graph(msg.into())
    }
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
