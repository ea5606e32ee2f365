//! Crate-wide error type.
//!
//! Solver outcomes that are expected at runtime (inner line-search failure,
//! outer iteration budget exhaustion) are reported through status enums, not
//! through this type. `Error` is reserved for contract violations: bad shapes,
//! non-finite data, factorization breakdown, unusable configuration.

use thiserror::Error;

/// Errors shared by the numeric kernels, problem builders, solvers and CLI.
#[derive(Debug, Error)]
pub enum Error {
    /// Dimensions of the supplied operands do not agree.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// An input value (matrix/vector entry, parameter) is NaN or infinite.
    #[error("non-finite input: {0}")]
    NonFiniteInput(String),

    /// A problem evaluator produced NaN/Inf or a wrongly shaped value.
    #[error("non-finite evaluation: {0}")]
    NonFiniteEvaluation(String),

    /// The damping escalation schedule ran out before a factorization
    /// succeeded (the last damping value tried is attached).
    #[error("damping escalation exhausted (last tau tried: {0:e})")]
    DampingExhausted(f64),

    /// A matrix required to be positive definite is not.
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    /// A square linear system is singular to working precision.
    #[error("singular linear system")]
    SingularSystem,

    /// The requested problem name is not in the catalog and is not a readable
    /// problem file.
    #[error("unknown problem: {0}")]
    UnknownProblem(String),

    /// The reduced objective is singular on the constraint null space, so the
    /// limiting solution is not unique.
    #[error("multiple minimizers: objective is singular on the constraint null space")]
    MultipleMinimizers,

    /// Invalid or inconsistent configuration (CLI flags, config file,
    /// penalty parameters, schedules).
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Filesystem failure while reading config/problem files or writing
    /// traces.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
