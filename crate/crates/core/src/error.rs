use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no quadratic nonresidue n = {a} (mod {q}) below p = {p}")]
    Exhausted { p: u64, a: u64, q: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("evaluation would take {ops} operations, above the cap of {cap}")]
    TooCostly { ops: u128, cap: u128 },

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("unknown lemma id `{0}`")]
    UnknownLemma(String),

    #[error("report output failed: {0}")]
    Output(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Output(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Output(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Output(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
