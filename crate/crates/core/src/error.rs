use thiserror::Error;

/// Errors raised by the library.
///
/// The variants map onto the CLI exit-code classes: input problems,
/// resource/budget limits, and theories that are unsupported or cannot be
/// computed on finite data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown point `{0}`")]
    UnknownPoint(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("index {index} out of range (valid: {range})")]
    IndexOutOfRange { index: usize, range: String },

    #[error("map is not continuous: {0}")]
    NotContinuous(String),

    #[error("not an interior cover: {0}")]
    NotInteriorCover(String),

    #[error("resource limit exceeded: {what} (limit {limit})")]
    Resource { what: String, limit: usize },

    #[error("non-finitary theory: {0}")]
    NonFinitary(String),

    #[error("unsupported theory: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, limit: usize) -> Self {
        Error::Resource {
            what: what.into(),
            limit,
        }
    }

    pub(crate) fn index(index: usize, lo: usize, hi: usize) -> Self {
        Error::IndexOutOfRange {
            index,
            range: format!("{lo}..={hi}"),
        }
    }

    /// True for errors caused by a caller-supplied limit rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
