//! Subspaces of `C^n` held as orthonormal column bases, their lattice
//! operations, the minimal angle, and orthogonal/oblique projections.
//!
//! Geometric decisions (does a sum collapse, is an intersection trivial, is
//! one subspace inside another) compare orthonormal bases, so their inputs
//! already carry the error of whatever SVD produced them. They therefore use
//! [`ToleranceConfig::subspace_cutoff`], the square root of the raw rank
//! cutoff, rather than the raw cutoff itself.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, hstack, Matrix, ToleranceConfig};

#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    /// The trivial subspace `{0}` of `C^n`.
    pub fn zero(n: usize) -> Self {
        Self {
            ambient_dim: n,
            basis: Matrix::zeros(n, 0),
        }
    }

    /// All of `C^n`.
    pub fn full(n: usize) -> Self {
        Self {
            ambient_dim: n,
            basis: Matrix::identity(n, n),
        }
    }

    /// Wraps a basis the caller already knows to be orthonormal.
    pub(crate) fn from_orthonormal_unchecked(basis: Matrix) -> Self {
        Self {
            ambient_dim: basis.nrows(),
            basis,
        }
    }

    /// Wraps an orthonormal basis after checking `B*B = I`.
    pub fn from_orthonormal(basis: Matrix, tol: &ToleranceConfig) -> Result<Self> {
        linalg::ensure_finite(&basis)?;
        let k = basis.ncols();
        let gram = basis.adjoint() * &basis;
        if linalg::distance(&gram, &Matrix::identity(k, k)) > tol.residual_atol.max(1e-12) {
            return Err(Error::NotOrthonormal);
        }
        Ok(Self::from_orthonormal_unchecked(basis))
    }

    /// Span of the columns of an arbitrary matrix.
    pub fn span(vectors: &Matrix, tol: &ToleranceConfig) -> Result<Self> {
        linalg::range_basis(vectors, tol)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Orthogonal complement `M⊥`.
    pub fn complement(&self) -> Subspace {
        let n = self.ambient_dim;
        let k = self.dim();
        if k == 0 {
            return Subspace::full(n);
        }
        if k == n {
            return Subspace::zero(n);
        }
        // I − BB* has singular values 1 (n − k times) and 0 (k times).
        let proj = Matrix::identity(n, n) - &self.basis * self.basis.adjoint();
        let dec = linalg::svd(&proj).expect("projector entries are finite");
        Subspace::from_orthonormal_unchecked(dec.u.columns(0, n - k).into_owned())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim == other.ambient_dim {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim))
        }
    }

    /// `M + N`.
    pub fn sum(&self, other: &Subspace, tol: &ToleranceConfig) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let cat = hstack(&self.basis, &other.basis);
        orth(&cat, tol.subspace_cutoff(self.ambient_dim))
    }

    /// `M ∩ N`.
    pub fn intersect(&self, other: &Subspace, tol: &ToleranceConfig) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(n));
        }
        let k = self.dim();
        let cat = hstack(&self.basis, &(-&other.basis));
        let dec = linalg::svd(&pad_rows(&cat))?;
        let rank = count_above(&dec.singular_values, tol.subspace_cutoff(n));
        let total = cat.ncols();
        let nullity = total - rank;
        if nullity == 0 {
            return Ok(Subspace::zero(n));
        }
        let coeffs = dec.v.columns(rank, nullity);
        let vectors = &self.basis * coeffs.rows(0, k);
        let vdec = linalg::svd(&vectors)?;
        Ok(Subspace::from_orthonormal_unchecked(
            vdec.u.columns(0, nullity.min(vdec.u.ncols())).into_owned(),
        ))
    }

    /// `M ⊖ N = M ∩ (M ∩ N)⊥`.
    pub fn ominus(&self, other: &Subspace, tol: &ToleranceConfig) -> Result<Subspace> {
        let common = self.intersect(other, tol)?;
        self.intersect(&common.complement(), tol)
    }

    /// True iff `M ∩ N = {0}`, i.e. `dim M + dim N = dim(M + N)`.
    pub fn is_direct_sum(&self, other: &Subspace, tol: &ToleranceConfig) -> Result<bool> {
        let s = self.sum(other, tol)?;
        Ok(s.dim() == self.dim() + other.dim())
    }

    /// Cosine of the minimal angle: the largest singular value of `B_M* B_N`.
    pub fn minimal_angle_cos(&self, other: &Subspace) -> Result<f64> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(0.0);
        }
        let cross = self.basis.adjoint() * &other.basis;
        let dec = linalg::svd(&cross)?;
        Ok(dec.max_singular_value().clamp(0.0, 1.0))
    }

    /// The three equivalent conditions for a closed direct sum, each
    /// computed on its own.
    pub fn angle_equivalences(
        &self,
        other: &Subspace,
        tol: &ToleranceConfig,
    ) -> Result<AngleEquivalences> {
        self.check_ambient(other)?;
        let c0 = self.minimal_angle_cos(other)?;
        let c0_lt_1 = c0 < 1.0 - tol.angle_gap;
        let direct_sum_closed = self.intersect(other, tol)?.is_zero();
        let complements_span = self
            .complement()
            .sum(&other.complement(), tol)?
            .is_full();
        Ok(AngleEquivalences {
            c0,
            c0_lt_1,
            direct_sum_closed,
            complements_span,
        })
    }

    /// `self ⊇ other`, tested as `sin θ_max(other, self) ≤ cutoff`.
    pub fn contains(&self, other: &Subspace, tol: &ToleranceConfig) -> Result<bool> {
        self.check_ambient(other)?;
        if other.is_zero() {
            return Ok(true);
        }
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(self.gap_from(other)? <= tol.subspace_cutoff(self.ambient_dim))
    }

    /// Largest sine of the principal angles from `other` into `self`.
    fn gap_from(&self, other: &Subspace) -> Result<f64> {
        let n = self.ambient_dim;
        let residual = &other.basis - &self.basis * (self.basis.adjoint() * &other.basis);
        if residual.ncols() == 0 || n == 0 {
            return Ok(0.0);
        }
        Ok(linalg::svd(&residual)?.max_singular_value())
    }

    /// Subspace equality: equal dimension and `c₀(M, N⊥)` below the cutoff.
    pub fn equals(&self, other: &Subspace, tol: &ToleranceConfig) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.dim() == other.dim() && self.contains(other, tol)?)
    }

    /// The image `T(M)` of this subspace under a linear map.
    pub fn image(&self, map: &Matrix, tol: &ToleranceConfig) -> Result<Subspace> {
        if map.ncols() != self.ambient_dim {
            return Err(Error::AmbientMismatch(map.ncols(), self.ambient_dim));
        }
        if self.is_zero() {
            return Ok(Subspace::zero(map.nrows()));
        }
        Subspace::span(&(map * &self.basis), tol)
    }

    pub fn orthogonal_projection(&self) -> Projection {
        Projection {
            matrix: &self.basis * self.basis.adjoint(),
            range: self.clone(),
            nullspace: self.complement(),
        }
    }

    /// `P_{M//N}`: the idempotent with range `M` and null space `N`.
    pub fn oblique_projection(&self, along: &Subspace, tol: &ToleranceConfig) -> Result<Projection> {
        self.check_ambient(along)?;
        let n = self.ambient_dim;
        if self.dim() + along.dim() != n || !self.is_direct_sum(along, tol)? {
            return Err(Error::NotComplementary(format!(
                "dim {} + dim {} in C^{} with the sum of dimension {}",
                self.dim(),
                along.dim(),
                n,
                self.sum(along, tol)?.dim()
            )));
        }
        let frame = hstack(&self.basis, &along.basis);
        let inv = linalg::try_inverse(&frame).ok_or_else(|| {
            Error::NotComplementary("concatenated basis is singular".to_string())
        })?;
        let image = hstack(&self.basis, &Matrix::zeros(n, along.dim()));
        Ok(Projection {
            matrix: image * inv,
            range: self.clone(),
            nullspace: along.clone(),
        })
    }
}

/// Outcome of the three equivalent closed-direct-sum conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngleEquivalences {
    pub c0: f64,
    pub c0_lt_1: bool,
    pub direct_sum_closed: bool,
    pub complements_span: bool,
}

impl AngleEquivalences {
    pub fn all_agree(&self) -> bool {
        self.c0_lt_1 == self.direct_sum_closed && self.direct_sum_closed == self.complements_span
    }
}

/// An idempotent together with its certified range and null space.
#[derive(Debug, Clone)]
pub struct Projection {
    pub matrix: Matrix,
    pub range: Subspace,
    pub nullspace: Subspace,
}

impl Projection {
    pub fn ambient_dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `I − P = P_{N//M}`.
    pub fn complementary(&self) -> Projection {
        let n = self.ambient_dim();
        Projection {
            matrix: Matrix::identity(n, n) - &self.matrix,
            range: self.nullspace.clone(),
            nullspace: self.range.clone(),
        }
    }

    /// `P* = P_{N⊥//M⊥}`.
    pub fn adjoint(&self) -> Projection {
        Projection {
            matrix: self.matrix.adjoint(),
            range: self.nullspace.complement(),
            nullspace: self.range.complement(),
        }
    }

    /// `P*P + (I − P*)(I − P)`: Hermitian positive definite, and `P` is
    /// self-adjoint in the inner product it induces.
    pub fn symmetrizing_weight(&self) -> Matrix {
        let n = self.ambient_dim();
        let p_adj = self.matrix.adjoint();
        let comp = Matrix::identity(n, n) - &self.matrix;
        &p_adj * &self.matrix + comp.adjoint() * comp
    }

    pub fn idempotency_defect(&self) -> f64 {
        linalg::idempotency_defect(&self.matrix)
    }

    pub fn is_hermitian(&self, tol: &ToleranceConfig) -> bool {
        linalg::hermitian_defect(&self.matrix) <= tol.residual_atol * (1.0 + self.matrix.norm())
    }

    /// Checks idempotency and the action on both certified subspaces.
    pub fn verify(&self, tol: &ToleranceConfig) -> bool {
        let scale = 1.0 + self.matrix.norm_squared();
        let on_range = (&self.matrix * self.range.basis() - self.range.basis()).norm();
        let on_null = (&self.matrix * self.nullspace.basis()).norm();
        self.idempotency_defect() <= tol.residual_atol * scale
            && on_range <= tol.residual_atol * scale
            && on_null <= tol.residual_atol * scale
            && self.range.dim() + self.nullspace.dim() == self.ambient_dim()
    }
}

fn count_above(values: &[f64], rtol: f64) -> usize {
    linalg::rank_from_values(values, rtol).rank
}

/// Orthonormal basis for the columns of `m` with an explicit relative cutoff.
fn orth(m: &Matrix, rtol: f64) -> Result<Subspace> {
    let dec = linalg::svd(m)?;
    let r = count_above(&dec.singular_values, rtol);
    Ok(Subspace::from_orthonormal_unchecked(
        dec.u.columns(0, r).into_owned(),
    ))
}

/// Pads with zero rows so a thin SVD returns a full right basis.
fn pad_rows(m: &Matrix) -> Matrix {
    let (r, c) = m.shape();
    if r >= c {
        return m.clone();
    }
    let mut out = Matrix::zeros(c, c);
    out.rows_mut(0, r).copy_from(m);
    out
}
