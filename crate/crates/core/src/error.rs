use thiserror::Error;

/// Errors raised while building rings, maps and verdicts.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),

    #[error("resource cap exceeded: {count} ambient monomials in degree {degree} (cap {cap})")]
    CapExceeded { degree: usize, count: u128, cap: usize },

    #[error("elements belong to different algebras")]
    OwnerMismatch,

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("relation {relation} maps to nonzero element {image}")]
    RelationViolation { relation: String, image: String },

    #[error("no fundamental class satisfies the pairing identity: {0}")]
    InfeasibleGysin(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_) | Error::UnknownGenerator(_) => 2,
            Error::CapExceeded { .. } => 3,
            _ => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
