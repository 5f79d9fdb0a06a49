use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("input polynomial is not hyperbolic")]
    NonHyperbolicInput,

    #[error("sequence defined for {have} indices but degree {needed} needs {}", needed + 1)]
    SequenceTooShort { needed: usize, have: usize },

    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeBound { degree: usize, bound: usize },

    #[error("operator does not have constant coefficients")]
    NotConstantCoefficients,

    #[error("root condition violated: {0}")]
    RootCondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}
