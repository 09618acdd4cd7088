/// Errors shared across the library.
///
/// The taxonomy is deliberately small: callers that hit `Domain` asked for a
/// value outside a function's mathematical domain, `InvalidWeight` and
/// `InvalidFunction` flag inputs that fail a structural hypothesis, and
/// `Internal` marks a violated identity that indicates a bug here, not in the
/// caller.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("weight fails required hypotheses: {0}")]
    InvalidWeight(String),
    #[error("could not bracket a root: {0}")]
    NoBracket(String),
    #[error("function is not monotone on the bracket: {0}")]
    InvalidFunction(String),
    #[error("location is rational: {0}")]
    RationalLocation(String),
    #[error("integrator step failed: {0}")]
    StepFailure(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
