use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),
    /// A series, product or integrator hit its cap before its error bound was met.
    #[error("convergence failure: {0}")]
    Convergence(String),
    /// An integrand or intermediate value was NaN or infinite.
    #[error("non-finite value: {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn convergence(msg: impl Into<String>) -> Error {
    Error::Convergence(msg.into())
}
