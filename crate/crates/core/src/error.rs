use thiserror::Error;

/// Errors produced by the solvers, constructions and the search driver.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("capacity exceeded: {what} requires order {requested}, limit is {limit}")]
    Capacity {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("formula not applicable: {0}")]
    Inapplicable(String),

    #[error("construction infeasible: {0}")]
    Infeasible(String),

    #[error("enumeration refused: estimated {estimated:.3e} states exceeds the limit of {limit}")]
    StateLimit { estimated: f64, limit: u64 },

    #[error("internal solver disagreement: {0}")]
    Disagreement(String),

    #[error("assertable bound violated: {0}")]
    BoundViolation(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
