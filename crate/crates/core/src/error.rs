use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A value violates a documented invariant. `field` names the offending input.
    #[error("{field} {message}")]
    Validation { field: String, message: String },

    /// The input document could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Synthesis produced a geometry that cannot be built (e.g. non-positive length).
    #[error("non-physical result: {0}")]
    NonPhysical(String),

    /// An operation needs a propagation path that does not exist in the scene.
    #[error("path {0} does not exist for this geometry")]
    MissingPath(&'static str),

    /// No propagation path exists, so no received power can be formed.
    #[error("no propagation path exists between the transceivers")]
    NoPath,
}

impl Error {
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }
}
