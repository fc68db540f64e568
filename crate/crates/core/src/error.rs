use thiserror::Error;

use crate::orders::OrderKind;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("matrix must be square, got {0:?}")]
    NotSquare((usize, usize)),
    #[error("non-finite entry in input matrix")]
    NonFinite,
    #[error("singular value decomposition did not converge")]
    SvdNoConvergence,
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("basis columns are not orthonormal")]
    NotOrthonormal,
    #[error("not a complementary pair: {0}")]
    NotComplementary(String),
    #[error("complement condition violated: {0}")]
    ComplementCondition(String),
    #[error("not group invertible: R(A) and N(A) intersect")]
    NotGroupInvertible,
    #[error("required order fails: {0}")]
    OrderFails(OrderKind),
    #[error("right-hand side not in range: {0}")]
    Membership(String),
    #[error("verification failed for {what}: residual {residual:e} exceeds {bound:e}")]
    Verification {
        what: &'static str,
        residual: f64,
        bound: f64,
    },
    #[error("infeasible dimensions: {0}")]
    InfeasibleDims(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
