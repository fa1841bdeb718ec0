use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} needs {needed} entries, exceeding the budget of {budget}")]
    Budget {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what}: residual {value:e} exceeds tolerance {limit:e}")]
    Tolerance {
        what: &'static str,
        value: f64,
        limit: f64,
    },

    #[error("{what}: routes disagree ({first} vs {second}, tolerance {tolerance:e})")]
    RouteDisagreement {
        what: &'static str,
        first: f64,
        second: f64,
        tolerance: f64,
    },

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("major arcs around {first} and {second} overlap; B is too small for this delta")]
    ArcOverlap { first: String, second: String },

    #[error("alpha = {0} does not lie on any major arc")]
    NotOnMajorArc(f64),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
