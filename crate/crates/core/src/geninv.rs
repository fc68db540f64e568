//! Moore–Penrose, reflexive (prescribed range and null space), group and
//! core inverses.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, ToleranceConfig};
use crate::subspace::Subspace;

/// Moore–Penrose inverse `A†` via SVD with the configured rank cutoff.
pub fn pinv(a: &Matrix, tol: &ToleranceConfig) -> Result<Matrix> {
    linalg::pinv_svd(a, tol)
}

/// Residuals `‖AXA − A‖, ‖XAX − X‖, ‖(AX)* − AX‖, ‖(XA)* − XA‖`.
pub fn penrose_residuals(a: &Matrix, x: &Matrix) -> [f64; 4] {
    let ax = a * x;
    let xa = x * a;
    [
        linalg::distance(&(&ax * a), a),
        linalg::distance(&(&xa * x), x),
        linalg::hermitian_defect(&ax),
        linalg::hermitian_defect(&xa),
    ]
}

/// The unique `X` with `AXA = A`, `XAX = X`, `R(X) = range`, `N(X) = null`.
///
/// Requires `R(A) ∔ null` to fill the codomain and `range ∔ N(A)` to fill the
/// domain. Built as `X = B_N (A B_N)† P_{R(A)//M}`.
pub fn reflexive_inverse(
    a: &Matrix,
    range: &Subspace,
    null: &Subspace,
    tol: &ToleranceConfig,
) -> Result<Matrix> {
    linalg::ensure_finite(a)?;
    let (m, n) = a.shape();
    if range.ambient_dim() != n {
        return Err(Error::AmbientMismatch(range.ambient_dim(), n));
    }
    if null.ambient_dim() != m {
        return Err(Error::AmbientMismatch(null.ambient_dim(), m));
    }
    let ra = linalg::range_basis(a, tol)?;
    let na = linalg::null_basis(a, tol)?;
    if ra.dim() + null.dim() != m || !ra.is_direct_sum(null, tol)? {
        return Err(Error::ComplementCondition(format!(
            "R(A) (dim {}) and the requested null space (dim {}) do not complement in C^{m}",
            ra.dim(),
            null.dim()
        )));
    }
    if range.dim() + na.dim() != n || !range.is_direct_sum(&na, tol)? {
        return Err(Error::ComplementCondition(format!(
            "the requested range (dim {}) and N(A) (dim {}) do not complement in C^{n}",
            range.dim(),
            na.dim()
        )));
    }
    if range.is_zero() {
        return Ok(Matrix::zeros(n, m));
    }
    let onto_range = ra.oblique_projection(null, tol)?;
    let restricted = a * range.basis();
    let inv = linalg::pinv_svd(&restricted, tol)?;
    Ok(range.basis() * inv * onto_range.matrix)
}

/// `rank(A²) = rank(A)`, equivalent to `C^n = R(A) ∔ N(A)`.
pub fn is_group_invertible(a: &Matrix, tol: &ToleranceConfig) -> Result<bool> {
    linalg::ensure_square(a)?;
    Ok(linalg::numerical_rank(&(a * a), tol)? == linalg::numerical_rank(a, tol)?)
}

/// `A# = A^{(1,2)}_{R(A), N(A)}`.
pub fn group_inverse(a: &Matrix, tol: &ToleranceConfig) -> Result<Matrix> {
    if !is_group_invertible(a, tol)? {
        return Err(Error::NotGroupInvertible);
    }
    let ra = linalg::range_basis(a, tol)?;
    let na = linalg::null_basis(a, tol)?;
    reflexive_inverse(a, &ra, &na, tol).map_err(|e| match e {
        Error::ComplementCondition(_) => Error::NotGroupInvertible,
        other => other,
    })
}

/// Core inverse `A^{(1,2)}_{R(A), N(A*)}`.
pub fn core_inverse(a: &Matrix, tol: &ToleranceConfig) -> Result<Matrix> {
    if !is_group_invertible(a, tol)? {
        return Err(Error::NotGroupInvertible);
    }
    let ra = linalg::range_basis(a, tol)?;
    reflexive_inverse(a, &ra, &ra.complement(), tol)
}
