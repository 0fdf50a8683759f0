use crate::ComplexValue;

/// Errors raised by prime generation, block evaluation and the products.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A factor denominator vanished. `prime` is absent for factors that are
    /// not tied to a single prime.
    #[error("pole at s = {s}{}", prime.map(|p| format!(" (prime {p})")).unwrap_or_default())]
    Pole { prime: Option<u64>, s: ComplexValue },

    #[error("outside the reference oracle domain: {0}")]
    OracleDomain(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn pole(prime: u64, s: ComplexValue) -> Self {
        Error::Pole {
            prime: Some(prime),
            s,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
