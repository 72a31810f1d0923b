use thiserror::Error;

/// Errors shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    /// A computation needs a Kontsevich entry (or a minimal-stratum volume)
    /// that is neither tabulated nor reachable by the brute-force layer.
    #[error("unavailable: {0}")]
    Unavailable(String),

    /// Odd (or non-positive) argument passed to the even zeta evaluator.
    /// This signals a logic bug upstream: valid graph polynomials only ever
    /// produce even zeta arguments.
    #[error("odd zeta value requested: zeta({0})")]
    OddZeta(i64),

    /// Adding pi-values of different grade. Every quantity in scope is a pure
    /// rational multiple of a single power of pi, so this is always a bug.
    #[error("mixed pi-grades in addition: pi^{0} vs pi^{1}")]
    MixedPiGrade(u32, u32),

    /// Polynomial operands disagree on the number of variables.
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),

    /// Singularity data that does not describe an odd stratum in scope.
    #[error("not a quadratic-differential stratum: {0}")]
    NotAStratum(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Interpolation sample set crossed a wall or left its coset.
    #[error("cell/coset violation: {0}")]
    CellViolation(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
