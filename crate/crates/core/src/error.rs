use thiserror::Error;

/// Errors raised by model construction and evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A time argument was negative or not finite.
    #[error("time must be a finite, non-negative number of minutes (got {0})")]
    InvalidTime(f64),

    /// The appearance rate is undefined because no arrival probability remains.
    #[error("appearance rate is undefined at t = {0}: survival probability is zero")]
    UndefinedRate(f64),

    /// A constructor or operation received a parameter outside its domain.
    #[error("invalid `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Monte Carlo estimation needs at least two draws for a standard error.
    #[error("sample count must be at least 2 (got {0})")]
    TooFewSamples(u64),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub(crate) fn check_time(t: f64) -> Result<f64> {
    if t.is_finite() && t >= 0.0 {
        Ok(t)
    } else {
        Err(Error::InvalidTime(t))
    }
}
