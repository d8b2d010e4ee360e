use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The inputs describe a zero vector or zero-trace operator.
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// A search did not find a crossing inside its range.
    #[error("not found: {0}")]
    NotFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn degenerate(msg: impl Into<String>) -> Error {
    Error::Degenerate(msg.into())
}

/// Checks that `eta` is a finite value in `[0, 1]`.
pub(crate) fn check_unit_interval(name: &str, eta: f64) -> Result<()> {
    if eta.is_finite() && (0.0..=1.0).contains(&eta) {
        Ok(())
    } else {
        Err(domain(format!("{name} must lie in [0, 1], got {eta}")))
    }
}
