use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("unknown group name: {0}")]
    UnknownGroup(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid 1-cell: {0}")]
    InvalidOneCell(String),
    #[error("invalid 2-cell: {0}")]
    InvalidTwoCell(String),
    #[error("homomorphism is not injective")]
    NonInjectiveHom,
    #[error("group order {order} exceeds limit {limit}")]
    OrderLimitExceeded { order: usize, limit: usize },
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("codomain mismatch")]
    CodomainMismatch,
    #[error("not a groupoid: {0}")]
    NotAGroupoid(String),
    #[error("basis mismatch")]
    BasisMismatch,
    #[error("base mismatch")]
    BaseMismatch,
    #[error("group {0} is outside the universe")]
    UniverseExceeded(String),
    #[error("window exceeded: {0}")]
    WindowExceeded(String),
    #[error("presentation is not deflative: {0}")]
    NotDeflative(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("size bound exceeded: {0}")]
    SizeBoundExceeded(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("no mediating equivalence found")]
    NoMediator,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
