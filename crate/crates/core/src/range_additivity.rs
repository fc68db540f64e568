//! Range additivity `R(A+B) = R(A) + R(B)` and its kernel-side
//! characterizations.

use serde::Serialize;

use crate::error::Result;
use crate::linalg::{self, hstack, Matrix, ToleranceConfig};
use crate::subspace::{Projection, Subspace};

/// `R(A+B) = R(A) + R(B)`, decided through the equivalent inclusion
/// `R(A) ⊆ R(A+B)`, i.e. `rank([A+B | A]) = rank(A+B)`.
pub fn is_range_additive(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<bool> {
    linalg::ensure_same_shape(a, b)?;
    let s = a + b;
    let r_sum = linalg::numerical_rank(&s, tol)?;
    let r_cat = linalg::numerical_rank(&hstack(&s, a), tol)?;
    Ok(r_cat == r_sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DisjointRangeAdditivity {
    /// `R(A) ∩ R(B) = {0}`.
    pub ranges_disjoint: bool,
    /// `R(A+B) = R(A) ∔ R(B)`.
    pub additive: bool,
    /// `N(A) + N(B)` is the whole domain.
    pub kernels_span: bool,
}

pub fn disjoint_range_additivity(
    a: &Matrix,
    b: &Matrix,
    tol: &ToleranceConfig,
) -> Result<DisjointRangeAdditivity> {
    linalg::ensure_same_shape(a, b)?;
    let ra = linalg::range_basis(a, tol)?;
    let rb = linalg::range_basis(b, tol)?;
    let rs = linalg::range_basis(&(a + b), tol)?;
    let ranges_disjoint = ra.intersect(&rb, tol)?.is_zero();
    let additive = ranges_disjoint && rs.equals(&ra.sum(&rb, tol)?, tol)?;
    let kernels_span = linalg::null_basis(a, tol)?
        .sum(&linalg::null_basis(b, tol)?, tol)?
        .is_full();
    Ok(DisjointRangeAdditivity {
        ranges_disjoint,
        additive,
        kernels_span,
    })
}

#[derive(Debug, Clone)]
pub struct KernelCharacterization {
    /// `R(A*) ∔ R(B*)` is a (closed) direct sum.
    pub adjoint_ranges_direct_closed: bool,
    /// A projection with `A* = Q(A* + B*)`, present when the above holds.
    pub witness_q: Option<Projection>,
    /// `N(A) + N(B)` is the whole domain.
    pub kernels_span: bool,
    /// `R(A+B) = R(A) + R(B)`.
    pub range_additive: bool,
}

pub fn kernel_characterization(
    a: &Matrix,
    b: &Matrix,
    tol: &ToleranceConfig,
) -> Result<KernelCharacterization> {
    linalg::ensure_same_shape(a, b)?;
    let a_adj = a.adjoint();
    let b_adj = b.adjoint();
    let ra = linalg::range_basis(&a_adj, tol)?;
    let rb = linalg::range_basis(&b_adj, tol)?;
    let adjoint_ranges_direct_closed = ra.is_direct_sum(&rb, tol)?;

    let witness_q = if adjoint_ranges_direct_closed {
        let q = projection_killing(&ra, &rb, tol)?;
        let residual = linalg::distance(&a_adj, &(&q.matrix * (&a_adj + &b_adj)));
        let scale = 1.0 + q.matrix.norm() * (a.norm() + b.norm());
        (residual <= tol.residual_atol * scale).then_some(q)
    } else {
        None
    };

    let kernels_span = linalg::null_basis(a, tol)?
        .sum(&linalg::null_basis(b, tol)?, tol)?
        .is_full();
    let range_additive = is_range_additive(a, b, tol)?;
    Ok(KernelCharacterization {
        adjoint_ranges_direct_closed,
        witness_q,
        kernels_span,
        range_additive,
    })
}

/// `P_{keep // kill ⊕ (keep + kill)⊥}` for disjoint `keep`, `kill`.
pub(crate) fn projection_killing(
    keep: &Subspace,
    kill: &Subspace,
    tol: &ToleranceConfig,
) -> Result<Projection> {
    let outside = keep.sum(kill, tol)?.complement();
    keep.oblique_projection(&kill.sum(&outside, tol)?, tol)
}
