use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    /// The first-integral constant is below the admissible range, or an
    /// integration interval leaves `[k_m, k_M]`.
    #[error("domain error: {0}")]
    Domain(String),

    /// A precondition on a curve or state was violated (e.g. metrics of an
    /// open curve).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A root search did not find a sign change where one was required.
    #[error("bracket failure: {0}")]
    Bracket(String),

    /// No admissible constant realizes the requested closed critical curve.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A surgery could not locate its cap parameter.
    #[error("geometry error: {0}")]
    Geometry(String),

    /// A shape generator rejected its parameters.
    #[error("generator rejected parameters: {0}")]
    Rejected(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
