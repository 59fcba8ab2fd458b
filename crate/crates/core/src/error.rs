use thiserror::Error;

/// Errors raised by the algebraic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("descriptor mismatch: {0}")]
    DescriptorMismatch(String),
    #[error("zero input where a nonzero element is required")]
    ZeroInput,
    #[error("element is not F-homogeneous")]
    NotHomogeneous,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid weight form: {0}")]
    InvalidForm(String),
    #[error("cone not basic: {0}")]
    NotBasic(String),
    #[error("invalid cone: {0}")]
    InvalidCone(String),
    #[error("weight outside the basis context: {0}")]
    OutsideContext(String),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("filtration violation: {0}")]
    Filtration(String),
    #[error("syzygy relation does not hold")]
    RelationFails,
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("inconclusive at bound {0}")]
    Inconclusive(usize),
    #[error("certificate verification failed: {0}")]
    Verification(String),
}

/// Errors raised while reading operator text or problem files.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("semantic error at line {line}: {message}")]
    Semantic { line: usize, message: String },
}

impl ParseError {
    pub(crate) fn syntax(column: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line: 1,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn semantic(message: impl Into<String>) -> Self {
        ParseError::Semantic {
            line: 1,
            message: message.into(),
        }
    }

    /// Re-anchors a single-line diagnostic at `line` of a larger file,
    /// shifting its column by `offset`.
    pub fn at_line(self, line: usize, offset: usize) -> Self {
        match self {
            ParseError::Syntax {
                column, message, ..
            } => ParseError::Syntax {
                line,
                column: column + offset,
                message,
            },
            ParseError::Semantic { message, .. } => ParseError::Semantic { line, message },
        }
    }
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
