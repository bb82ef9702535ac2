use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("register state is all zero")]
    ZeroState,
    #[error("state has {got} bits, register has {expected} stages")]
    StateLength { expected: usize, got: usize },
    #[error("invalid feedback polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("register degree {0} exceeds the supported maximum of 256 stages")]
    DegreeTooLarge(usize),
    #[error("invalid factor set for 2^{exponent} - 1: {reason}")]
    FactorSet { exponent: usize, reason: String },
    #[error("no factorization of 2^{0} - 1 available")]
    MissingFactorization(usize),
    #[error("search exhausted after {trials} trials")]
    NotFound { trials: usize },
    #[error("invalid boolean function parameters: {0}")]
    BooleanParameters(String),
    #[error("construction failed after {trials} trials")]
    ConstructionFailed { trials: usize },
    #[error("message-key counter exhausted; rekey required")]
    RekeyRequired,
    #[error("main key must not be all zero")]
    ZeroMainKey,
    #[error("session key must not be all zero")]
    ZeroSessionKey,
    #[error("not a bijection: {0}")]
    NotBijective(String),
    #[error("need at least {needed} bits, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed {what} at line {line}: {reason}")]
    Parse {
        what: &'static str,
        line: usize,
        reason: String,
    },
    #[error("fixture {name} failed validation: {reason}")]
    Fixture { name: String, reason: String },
}

impl Error {
    pub(crate) fn parse(what: &'static str, line: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            line,
            reason: reason.into(),
        }
    }
}
