use thiserror::Error;

/// Failures raised by the solvers and probes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// The profile stayed positive all the way to the integration cutoff.
    #[error("zero not found before r_max = {r_max}: last state r = {r}, phi = {phi}")]
    ZeroNotFound { r: f64, phi: f64, r_max: f64 },

    /// The adaptive stepper could not make progress.
    #[error("step failure at r = {r} (value {value}, slope {slope}): {reason}")]
    StepFailure {
        r: f64,
        value: f64,
        slope: f64,
        reason: String,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// `true` for precondition violations, `false` for numerical failures.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
