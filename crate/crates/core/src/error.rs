use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad user-facing configuration (CLI flags, config file, out-of-range knobs).
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Arguments outside an operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A solver failed to bracket or converge.
    #[error("numerical failure in {context}: {message}")]
    Numerical {
        context: &'static str,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn numerical(context: &'static str, message: impl Into<String>) -> Self {
        Error::Numerical {
            context,
            message: message.into(),
        }
    }
}
