use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("type mismatch: {0}")]
    Mismatch(String),
    #[error("no rewrite for generator `{generator}` under degree-1 element {label}")]
    MissingRewrite { generator: String, label: String },
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    #[error("no square filling found: {0}")]
    NoFill(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn mismatch(msg: impl Into<String>) -> Self {
        Error::Mismatch(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
