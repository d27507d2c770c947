use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("variable universe mismatch: {left} vs {right} variables")]
    VariableMismatch { left: usize, right: usize },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid ideal specification: {0}")]
    InvalidSpec(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("source ideal is not homogeneous")]
    NonHomogeneous,
    #[error("multigrading not applicable: {0}")]
    GradingNotApplicable(String),
    #[error("symmetry does not fix the ideal: {0}")]
    SymmetryMismatch(String),
    #[error("generic initial space unstable across random base changes: {0}")]
    GinUnstable(String),
    #[error("no sufficiently general subspace found after {0} attempts")]
    DegenerateSubspace(usize),
    #[error("method not supported for this ideal: {0}")]
    UnsupportedMethod(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
