use alloc::string::String;

/// Failure modes shared by every stage of the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("schema error at {location}: {message}")]
    Schema { location: String, message: String },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn schema(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        location: location.into(),
        message: message.into(),
    }
}
