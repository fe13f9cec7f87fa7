//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by the numerical routines.
///
/// The variants are grouped so that a front end can map them onto exit
/// codes: parameter and admissibility problems are validation errors, while
/// convergence and bracketing failures are numerical ones.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violates the constraints of the requested construction.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Evaluation at a pole of a meromorphic function.
    #[error("pole at x = {0}")]
    Pole(f64),

    /// A deletion set or seed choice would produce a singular potential.
    #[error("inadmissible construction: {0}")]
    Inadmissible(String),

    /// A quantity that must not vanish did vanish (zero denominator, node of a Wronskian).
    #[error("singular evaluation: {0}")]
    Singular(String),

    /// An iterative method failed to reach its tolerance.
    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// A monotone root search could not bracket its target.
    #[error("bracketing failed: {0}")]
    BracketFailure(String),

    /// A requested level lies beyond the finite number of bound states.
    #[error("level {n} exceeds the last bound state {n_max}")]
    LevelOutOfRange { n: usize, n_max: usize },
}

impl Error {
    /// True for errors caused by the caller's input rather than by numerics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_) | Error::Inadmissible(_) | Error::LevelOutOfRange { .. } | Error::Pole(_)
        )
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
