use thiserror::Error;

/// Errors surfaced by the exact-arithmetic layers.
///
/// Domain violations (mismatched ranks, support conditions, grading
/// requirements) are kept separate from parse problems so the CLI can map
/// them to distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("grading form mismatch: operands carry different forms")]
    GradingMismatch,

    #[error("zero grading form is not allowed")]
    ZeroForm,

    #[error("support violation: {0}")]
    SupportViolation(String),

    #[error("grading form must be integer-valued and surjective onto Z (integer weights with gcd 1), got {0}")]
    GradingNotIntegral(String),

    #[error("validity cutoff too high: requested data down to {requested}, element only valid above {cutoff}")]
    InsufficientDepth { requested: String, cutoff: String },

    #[error("{0}")]
    InvalidCone(String),

    #[error("forms are negatively proportional; no common negative direction exists")]
    NegativelyProportionalForms,

    #[error("ambient rank {0} exceeds the supported bound {1} for exact cone intersection")]
    RankTooLarge(usize, usize),

    #[error("lattice search exhausted (bound {0}); forms may be too degenerate")]
    SearchExhausted(u64),

    #[error("matrix is not square or sizes disagree: {0}")]
    MatrixShape(String),

    #[error("missing boundary entry from {from} to {to}")]
    MissingEntry { from: String, to: String },

    #[error("critical point index mismatch: {0}")]
    IndexMismatch(String),

    #[error("unknown critical point {0}")]
    UnknownPoint(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("internal invariant failed: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for malformed-input problems (CLI exit code 2); false for
    /// domain errors (exit code 1).
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}
