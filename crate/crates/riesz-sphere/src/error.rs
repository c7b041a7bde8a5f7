//! Error type shared by every fallible operation in the crate.

/// Errors reported by numerical routines.
///
/// `Domain` marks inputs outside an operation's mathematical domain
/// (poles of Gamma, parameters out of range, divergent integrals).
/// `Numeric` marks a computation that started from valid inputs but failed
/// to converge to the requested accuracy; the message carries a diagnostic
/// residual where one is available.  `NoSolution` is reserved for
/// well-posed solve operations whose answer genuinely does not exist
/// (for example a balance equation whose two sides never cross).
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("no solution: {0}")]
    NoSolution(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
    pub fn no_solution(msg: impl Into<String>) -> Self {
        Error::NoSolution(msg.into())
    }
}
