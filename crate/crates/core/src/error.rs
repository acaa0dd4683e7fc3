use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// A target value lies outside the range the curve attains.
    #[error("value {value} outside range ({lo}, {hi}) of {curve}")]
    Range {
        curve: String,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// A numerical routine failed to reach its tolerance.
    #[error("numerical failure in {op}: {detail}")]
    Numeric { op: &'static str, detail: String },

    /// The caller violated a documented precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error on line {line}: {detail}")]
    Parse { line: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        op,
        detail: detail.into(),
    }
}

pub(crate) fn numeric(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Numeric {
        op,
        detail: detail.into(),
    }
}
