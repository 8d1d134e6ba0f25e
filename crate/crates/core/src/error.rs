use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("arity error: {0}")]
    Arity(String),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("letter {0} has no membership certificate for the variant")]
    VariantMismatch(String),
    #[error("letter {0} is not in the base subgroup")]
    NotInBase(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("invalid tree pair: {0}")]
    InvalidTreePair(String),
}

impl Error {
    pub(crate) fn shifted(self, by: usize) -> Error {
        match self {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
