use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("size cap exceeded: {what} = {value} > {cap}")]
    SizeCap {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("numeric overflow: {0}")]
    NumericOverflow(String),

    #[error("configuration integrity error: {0}")]
    Integrity(String),

    #[error("root finding did not converge: {0}")]
    NoConvergence(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
