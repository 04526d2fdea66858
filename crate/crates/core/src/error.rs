use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument violates an operation's precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A configured resource limit would be exceeded.
    #[error("budget exceeded: {what} is {value}, limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        value: String,
        limit: String,
    },

    /// Malformed text input; `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The circuit is outside the ΣΠΣ class; `gate` is the 1-based index of
    /// the first AND gate with another AND gate in an operand cone.
    #[error("circuit is not ΣΠΣ: AND gate g{gate} has an AND gate in an operand cone")]
    NotSigmaPiSigma { gate: usize },

    #[error("generator matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    /// The multiplicative-complexity search visited more candidates than allowed.
    #[error("search exhausted its node cap of {cap} candidates")]
    NodeCapExhausted { cap: u64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn budget(what: &'static str, value: impl ToString, limit: impl ToString) -> Self {
        Error::BudgetExceeded {
            what,
            value: value.to_string(),
            limit: limit.to_string(),
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
