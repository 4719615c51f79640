use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("probability {0} is outside [0,1]")]
    ProbabilityRange(String),

    #[error("probability {0} must lie strictly between 0 and 1")]
    OpenProbabilityRange(String),

    #[error("total mass {0} exceeds 1")]
    MassExceeded(String),

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("ill-typed term `{term}`: {reason}")]
    IllTyped { term: String, reason: String },

    #[error("unknown sort `{0}`")]
    UnknownSort(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("no interpretation given for generator `{0}`")]
    MissingInterpretation(String),

    #[error("base `{0}` has no monoidal product")]
    NotMonoidal(String),

    #[error("hom-set {0} cannot be enumerated")]
    HomNotFinite(String),

    #[error("arrow equality is not decidable in base `{0}`")]
    UndecidableEquality(String),

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("syntax error at {line}:{col}: expected {expected}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn mismatch(msg: impl Into<String>) -> Self {
        Error::TypeMismatch(msg.into())
    }

    pub(crate) fn ill_typed(term: impl std::fmt::Display, reason: impl Into<String>) -> Self {
        Error::IllTyped {
            term: term.to_string(),
            reason: reason.into(),
        }
    }
}
