use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("negative valuation")]
    NegativeValuation,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("singular form")]
    SingularForm,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("degenerate form")]
    DegenerateForm,
    #[error("rule not applicable: {0}")]
    RuleNotApplicable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("undecidable: {0}")]
    Undecidable(String),
    #[error("coefficient degree exceeds cap {0}")]
    DegreeCapExceeded(u32),
    #[error("invariant violated: {0}")]
    Violation(String),
    #[error("wrong case: {0}")]
    WrongCase(String),
    #[error("input too large for exhaustive search")]
    TooLarge,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn prec(msg: impl Into<String>) -> Error {
    Error::PrecisionExhausted(msg.into())
}
