use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("malformed linear program: {0}")]
    MalformedLp(String),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("instance too large for {what}: {size} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("solution is not basic: {count} fractional coordinates (at most {limit} allowed)")]
    NotBasic { count: usize, limit: usize },

    #[error("bisection bracket [{lo}, {hi}] does not straddle a sign change")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("missing events in report: {0:?}")]
    MissingEvents(Vec<String>),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn instance(reason: impl Into<String>) -> Self {
        Error::InvalidInstance(reason.into())
    }
}
