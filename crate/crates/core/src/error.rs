use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quiver contains a directed cycle")]
    CyclicQuiver,
    #[error("quiver is not connected")]
    NotConnected,
    #[error("vertex `{0}` is a sink")]
    SinkVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("matrix does not have full column rank")]
    RankDeficient,
    #[error("only field base rings are supported for concrete computation")]
    NonField,
    #[error("representations live on different quivers")]
    QuiverMismatch,
    #[error("relation #{index} is violated: {relation}")]
    RelationsViolated { index: usize, relation: String },
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("not a morphism: naturality fails at arrow `{0}`")]
    NotNatural(String),
    #[error("{origin}:{line}: unexpected token `{token}`: {message}")]
    Parse {
        origin: String,
        line: usize,
        token: String,
        message: String,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("arithmetic overflow in path counting")]
    Overflow,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Precondition,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            CyclicQuiver | NotConnected | SinkVertex(_) | RankDeficient | NonField
            | RelationsViolated { .. } | Overflow => ErrorKind::Precondition,
            Invariant(_) => ErrorKind::Internal,
            _ => ErrorKind::Input,
        }
    }

    pub(crate) fn parse(
        origin: &str,
        line: usize,
        token: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        Error::Parse {
            origin: origin.to_string(),
            line,
            token: token.into(),
            message: message.into(),
        }
    }
}
