use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("DivisionByZero")]
    DivisionByZero,

    #[error("SingularMatrix")]
    SingularMatrix,

    #[error("IndexOutOfRange {what} {index} (bound {bound})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("ChartMismatch {0}")]
    ChartMismatch(String),

    #[error("ShapeMismatch {0}")]
    ShapeMismatch(String),

    #[error("NotBasic field has fiber components")]
    NotBasic,

    #[error("NotDegreeOne form is not of pure degree 1")]
    NotDegreeOne,

    #[error("SyntaxError at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("UnknownSymbol {name} at {line}:{column}")]
    UnknownSymbol {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("TypeMismatch {0}")]
    TypeMismatch(String),

    #[error("ConfigError line {line}: {message}")]
    Config { line: usize, message: String },
}

impl Error {
    pub(crate) fn index(what: &'static str, index: usize, bound: usize) -> Self {
        Error::IndexOutOfRange { what, index, bound }
    }

    /// Broad classification used to pick the process exit code.
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Config { .. } => ErrorCategory::Config,
            Error::Syntax { .. }
            | Error::UnknownSymbol { .. }
            | Error::TypeMismatch(_)
            | Error::IndexOutOfRange { .. }
            | Error::ChartMismatch(_)
            | Error::ShapeMismatch(_) => ErrorCategory::Input,
            Error::DivisionByZero | Error::SingularMatrix | Error::NotBasic | Error::NotDegreeOne => {
                ErrorCategory::Math
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Config,
    Input,
    Math,
}
