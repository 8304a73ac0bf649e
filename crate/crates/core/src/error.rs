use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is singular")]
    Singular,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid spec: {0}")]
    Spec(String),

    #[error("matrix is not a single Jordan block for eigenvalue {0}")]
    NotSingleBlock(String),

    #[error("no certificate exists: {criterion}")]
    NotConstructible { criterion: String },

    #[error("certificate flavor/target mismatch: {0}")]
    Flavor(String),

    #[error("certificate failed verification: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("eigenvalue pairing failed: {0}")]
    Pairing(String),

    #[error("inconsistent rank profile: {0}")]
    RankProfile(String),
}

impl Error {
    pub(crate) fn not_constructible(criterion: impl Into<String>) -> Self {
        Error::NotConstructible {
            criterion: criterion.into(),
        }
    }
}
