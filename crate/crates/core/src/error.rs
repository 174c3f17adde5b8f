use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("malformed rational `{0}`")]
    Rational(String),
    #[error("polynomial parse error at byte {pos}: {msg}")]
    Poly { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("expected a univariate polynomial, found variables {0:?}")]
    WrongArity(Vec<String>),
    #[error("inexact division")]
    InexactDivision,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ElimError {
    #[error("Groebner computation exceeded its time budget")]
    Timeout,
    #[error("ideal is not zero-dimensional (dimension {0})")]
    NotZeroDimensional(usize),
    #[error("ideal does not define a curve (dimension {0:?})")]
    NotCurve(Option<usize>),
    #[error("no separating linear form found after {0} attempts")]
    NoSeparatingForm(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {msg}")]
    Field { field: String, msg: String },
}

impl InstanceError {
    pub(crate) fn field(field: impl Into<String>, msg: impl Into<String>) -> Self {
        InstanceError::Field { field: field.into(), msg: msg.into() }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("genericity failure: {0}")]
    GenericityFailure(String),
    #[error("stratum timed out")]
    Timeout,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Elim(ElimError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("rank {r} outside 1..{m} (exclusive)")]
    Rank { m: usize, r: usize },
    #[error("bounds need at least one variable")]
    NoVariables,
}

impl From<ElimError> for SolveError {
    fn from(e: ElimError) -> Self {
        match e {
            ElimError::Timeout => SolveError::Timeout,
            other => SolveError::Elim(other),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("numeric oracle supports m <= 4 and n <= 3, got m = {m}, n = {n}")]
    TooLarge { m: usize, n: usize },
    #[error("objective has {got} coefficients, expected {expected}")]
    Objective { got: usize, expected: usize },
}
