use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed quadratic fields: sqrt({0}) and sqrt({1})")]
    MixedFields(i64, i64),
    #[error("invalid discriminant {0}: must be squarefree and not 0 or 1")]
    BadDiscriminant(i64),
    #[error("not an element of {0}")]
    NotInField(String),
    #[error("fraction not reduced: {0}")]
    NotReduced(String),
    #[error("field mismatch: expected {expected}, got {got}")]
    FieldMismatch { expected: String, got: String },
    #[error("base point maps to infinity")]
    BaseIsInfinity,
    #[error("reflection undefined at base point")]
    ReflectionAtBase,
    #[error("infinity has no finite value here")]
    InfiniteElement,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_invariant(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
