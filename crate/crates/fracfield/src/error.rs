use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied argument is out of its documented domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An iterative scheme failed to reach the requested tolerance. The
    /// best available estimate is carried along for diagnostics.
    #[error("numerical failure: {message} (partial estimate {partial:e})")]
    Numerical { message: String, partial: f64 },

    /// The operation is not defined for the given variant (e.g. a Lévy
    /// density was requested for a drift term).
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub fn numerical(msg: impl Into<String>, partial: f64) -> Self {
        Error::Numerical {
            message: msg.into(),
            partial,
        }
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
