use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix must be square and non-empty, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: defect {defect:e} exceeds {limit:e}")]
    NotHermitian { defect: f64, limit: f64 },

    #[error("eigensolver failed to converge on a {dim}x{dim} matrix (max |entry| {condition:e})")]
    EigenSolverFailed { dim: usize, condition: f64 },

    #[error("value {value:e} lies outside the domain {domain} of `{atom}`")]
    DomainViolation {
        atom: String,
        domain: String,
        value: f64,
    },

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("parameter {parameter:?} out of range for `{atom}`: {expected}")]
    ParameterOutOfRange {
        atom: String,
        parameter: Option<f64>,
        expected: &'static str,
    },

    #[error("matrix is not unitary: defect {defect:e}")]
    NotUnitary { defect: f64 },

    #[error("matrix is not strictly positive: minimum eigenvalue {min_eigenvalue:e} below floor {floor:e}")]
    NotPositive { min_eigenvalue: f64, floor: f64 },

    #[error("pair does not commute: commutator norm {norm:e} exceeds {limit:e}")]
    NotCommuting { norm: f64, limit: f64 },

    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("generated instance violates the hypothesis of {theorem}: {detail}")]
    HypothesisViolation { theorem: String, detail: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("malformed matrix JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Trial-level failures that justify drawing a fresh instance.
    pub fn is_recoverable(&self) -> bool {
        matches!(
            self,
            Error::DomainViolation { .. } | Error::NotPositive { .. }
        )
    }

    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
