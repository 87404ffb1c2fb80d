use thiserror::Error;

/// Errors raised by the spectral computations and their verifications.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the caller's parameters does not hold.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An exact identity or a numerical comparison against a closed form failed.
    #[error("verification failed: {0}")]
    Verification(String),

    /// A floating-point evaluation drifted past its trust boundary.
    #[error("precision lost: {0}")]
    Precision(String),

    /// A Galerkin matrix entry needs a divergent Fubini-Study moment.
    #[error("divergent moment for basis pair ({j}, {k}) x ({j2}, {k2}): {detail}")]
    DivergentMoment {
        j: u32,
        k: u32,
        j2: u32,
        k2: u32,
        detail: String,
    },

    /// The iterative eigensolver hit its iteration cap.
    #[error("eigensolver did not converge after {iterations} iterations (worst residual {worst_residual:e})")]
    NoConvergence {
        iterations: usize,
        worst_residual: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
