use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error at {path}: {message}")]
    Validation { path: String, message: String },

    #[error("negative value {0} is outside [0, inf]")]
    Negative(String),

    #[error("0 * inf is indeterminate")]
    IndeterminateProduct,

    #[error("{0} is outside [0, 1]")]
    Domain(String),

    #[error("empty set has no extrema")]
    EmptySet,

    #[error("generator is not in the admissible class: {0}")]
    NotInClassF(String),

    #[error("{op} is not defined at {at}")]
    OutsideValidDomain { op: String, at: String },

    #[error("{0} is not a point of the range")]
    NotInM(String),

    #[error("{0} is not a canonical representative")]
    NotInB(String),

    #[error("gap index {0} out of range")]
    NoSuchGap(usize),

    #[error("operation {name} failed registration: {reason}")]
    Registration { name: String, reason: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) => 2,
            _ => 1,
        }
    }
}
