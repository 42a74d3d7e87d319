use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates its documented constraint. `name` is the
    /// parameter's command-line name (without the leading dashes).
    #[error("invalid value for --{name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("out of domain: {0}")]
    Domain(String),

    #[error("singular configuration: samples {0} and {1} coincide")]
    Singular(usize, usize),

    #[error("infeasible constraint: {0}")]
    Infeasible(String),

    #[error("malformed sample file: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
