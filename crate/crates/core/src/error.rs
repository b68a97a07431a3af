use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(&'static str),

    #[error("integrand has dimension {integrand} but domain has {domain}")]
    DimensionMismatch { integrand: usize, domain: usize },

    #[error("integrand returned non-finite value {value} at sample {index}")]
    NonFiniteIntegrand { value: f64, index: u64 },

    #[error("too few calls: got {got}, need at least {min}")]
    TooFewCalls { got: u64, min: u64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },

    #[error("wavefunction is not normalized: norm {norm}")]
    NotNormalized { norm: f64 },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: &'static str) -> Self {
        Error::InvalidParameter { name, reason }
    }
}
