//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors reported by model constructors, evaluators and solvers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A numeric argument was NaN or infinite.
    #[error("non-finite input for {what}: {value}")]
    NonFinite { what: &'static str, value: f64 },

    /// A quantity that must stay in the non-negative economic domain was negative.
    #[error("negative quantity for {what}: {value}")]
    NegativeQuantity { what: &'static str, value: f64 },

    /// A model parameter violated a construction invariant.
    #[error("invalid {what}: {reason}")]
    InvalidParameter { what: &'static str, reason: String },

    /// Vector or matrix sizes do not line up.
    #[error("dimension mismatch for {what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    /// A plan-variable index points outside the model space.
    #[error("variable index {index} out of range for dimension {dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },

    /// A covariance matrix was not symmetric positive-definite.
    #[error("covariance matrix is not positive-definite (failed at pivot {pivot})")]
    NotPositiveDefinite { pivot: usize },

    /// Correlated sets are only evaluable for pairs.
    #[error("unsupported correlation structure: non-diagonal covariance with {size} members (only pairs are supported)")]
    UnsupportedCorrelation { size: usize },

    /// Piecewise-linear approximation of a model containing complete sets.
    #[error("piecewise-linear approximation of complete sets is unsupported; split the set into independent components first")]
    SetsNotApproximable,

    /// A column of the constraint matrix has no positive entry, so no finite box encloses the feasible set.
    #[error("variable {column} is not bounded by any resource row; enclosing box is unbounded")]
    UnboundedBox { column: usize },

    /// The feasible region is empty.
    #[error("problem is infeasible")]
    Infeasible,

    /// The simplex method hit a numerically singular basis.
    #[error("singular basis encountered in the simplex method (basis {basis:?})")]
    SingularBasis { basis: Vec<usize> },

    /// The linear oracle inside an iterative solver returned a non-optimal status.
    #[error("linear oracle failed: {reason}")]
    OracleFailure { reason: String },

    /// Every start of a multi-start solve failed.
    #[error("all {starts} solver starts failed: {reason}")]
    AllStartsFailed { starts: usize, reason: String },

    /// A test-oracle size limit was exceeded.
    #[error("{what} limited to {limit}, got {got}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        got: usize,
    },
}
