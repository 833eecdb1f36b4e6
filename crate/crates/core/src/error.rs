use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph is disconnected, no spanning tree exists")]
    NoSpanningTree,

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// An operation observed a state that its preconditions rule out, e.g. a
    /// 2-cut whose two outside ends coincide.
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("reduction step {index}: {source}")]
    ScriptStep {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub(crate) fn contradiction(msg: impl Into<String>) -> Error {
    Error::InternalContradiction(msg.into())
}
