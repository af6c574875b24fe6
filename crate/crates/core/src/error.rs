use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{p} is not an odd prime")]
    NotOddPrime { p: u64 },

    #[error("exponent n = {n} is below the minimum of 2")]
    ExponentTooSmall { n: u32 },

    #[error("length {p}^{n} exceeds the 2^31 cap")]
    LengthTooLarge { p: u64, n: u32 },

    #[error("sequences belong to different instances")]
    ParamsMismatch,

    #[error("closed form not covered: {0}")]
    NotCovered(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
