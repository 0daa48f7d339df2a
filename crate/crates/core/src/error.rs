use thiserror::Error;

/// Errors raised anywhere in the spectrum pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A physical or numerical parameter violates its invariant.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An input lies outside the domain where an operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative computation failed to settle before its cap.
    #[error("{what} did not converge (last estimates {last:e} and {previous:e})")]
    Convergence {
        what: String,
        last: f64,
        previous: f64,
    },

    /// 1 − 4η < 0: the inverse-square attraction admits no regular solution.
    #[error("supercritical inverse-square coupling: 1 - 4*eta = {discriminant:e} < 0")]
    Supercritical { discriminant: f64 },

    /// The square-root argument of the closed-form energy is negative.
    #[error("negative spectral root argument c/4 + 2*mu*B = {0:e}")]
    Spectral(f64),

    /// A terminating hypergeometric series hit a zero denominator.
    #[error("pole in hypergeometric denominator at term {term}")]
    Pole { term: usize },

    /// A closed-form evaluation produced a non-finite or invalid intermediate.
    #[error("evaluation failed: {message}; terms: {trace}")]
    Evaluation { message: String, trace: String },

    /// Adaptive quadrature did not reach the requested accuracy.
    #[error("integration did not converge: estimate {estimate:e}, error {error:e}")]
    Integration { estimate: f64, error: f64 },

    /// Malformed configuration input.
    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 1,
            Error::Convergence { .. }
            | Error::Integration { .. }
            | Error::Evaluation { .. }
            | Error::Pole { .. } => 2,
            Error::Parameter(_) | Error::Domain(_) | Error::Supercritical { .. } | Error::Spectral(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
