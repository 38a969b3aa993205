use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown group family in `{0}`")]
    UnknownFamily(String),

    #[error("invalid group parameters: {0}")]
    InvalidParameters(String),

    #[error("group order {order} exceeds the configured cap {cap}")]
    CapExceeded { order: usize, cap: usize },

    #[error("multiplication table violates the group axioms: {0}")]
    NotAGroup(String),

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("subgroup is not genetic in {0}")]
    NotGenetic(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("composition methods disagree: {0}")]
    MethodDisagreement(String),

    #[error("not a group action: {0}")]
    NotAnAction(String),

    #[error("map is not well defined: {0}")]
    IllDefinedMap(String),

    #[error("lattice containment fails: {0}")]
    NotContained(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
