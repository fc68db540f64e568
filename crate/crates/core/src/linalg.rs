//! Dense complex matrix helpers and the SVD-derived primitives (numerical
//! rank, range and null-space bases) that the rest of the crate builds on.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subspace::Subspace;

/// Dense complex matrix. Every operator in the crate is one of these.
pub type Matrix = DMatrix<Complex64>;
/// Dense complex column vector.
pub type Vector = DVector<Complex64>;

const RANK_SAFETY: f64 = 16.0;

/// Numerical thresholds shared by every rank, subspace and residual decision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Relative singular-value cutoff. `None` selects
    /// `max(rows, cols) * eps * 16` for each matrix examined.
    pub rank_rtol: Option<f64>,
    /// Absolute cutoff for formula residuals (scaled by the caller).
    pub residual_atol: f64,
    /// Margin below one for minimal-angle tests.
    pub angle_gap: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rank_rtol: None,
            residual_atol: 1e-9,
            angle_gap: 1e-12,
        }
    }
}

impl ToleranceConfig {
    pub fn new(rank_rtol: Option<f64>, residual_atol: f64, angle_gap: f64) -> Result<Self> {
        let tol = Self {
            rank_rtol,
            residual_atol,
            angle_gap,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(r) = self.rank_rtol {
            if !(r.is_finite() && (0.0..1.0).contains(&r)) {
                return Err(Error::InvalidTolerance(format!("rank_rtol = {r} not in [0, 1)")));
            }
        }
        if !(self.residual_atol.is_finite() && self.residual_atol >= 0.0) {
            return Err(Error::InvalidTolerance(format!(
                "residual_atol = {} must be finite and nonnegative",
                self.residual_atol
            )));
        }
        if !(self.angle_gap.is_finite() && (0.0..1.0).contains(&self.angle_gap)) {
            return Err(Error::InvalidTolerance(format!(
                "angle_gap = {} not in [0, 1)",
                self.angle_gap
            )));
        }
        Ok(())
    }

    /// Cutoff for geometric decisions between orthonormal bases of `C^n`.
    pub fn subspace_cutoff(&self, n: usize) -> f64 {
        self.rank_cutoff(n, n).sqrt()
    }

    /// Bound for scaled formula residuals. A caller-set rank cutoff coarser
    /// than `residual_atol` discards singular values of that relative size,
    /// so identities can only hold to the same level.
    pub fn residual_bound(&self) -> f64 {
        self.residual_atol.max(self.rank_rtol.unwrap_or(0.0))
    }

    /// Relative cutoff for a matrix of the given shape.
    pub fn rank_cutoff(&self, rows: usize, cols: usize) -> f64 {
        self.rank_rtol
            .unwrap_or_else(|| rows.max(cols).max(1) as f64 * f64::EPSILON * RANK_SAFETY)
    }
}

/// Thin singular value decomposition `A = U diag(S) V*` with `S` descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: Matrix,
    pub singular_values: Vec<f64>,
    pub v: Matrix,
}

impl Svd {
    pub fn reconstruct(&self) -> Matrix {
        let mut us = self.u.clone();
        for (j, s) in self.singular_values.iter().enumerate() {
            us.column_mut(j).scale_mut(*s);
        }
        us * self.v.adjoint()
    }

    pub fn max_singular_value(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Builds a matrix from real row-major data.
pub fn from_real_rows(rows: usize, cols: usize, data: &[f64]) -> Matrix {
    assert_eq!(data.len(), rows * cols, "data length must equal rows * cols");
    Matrix::from_fn(rows, cols, |i, j| c(data[i * cols + j], 0.0))
}

pub fn real_diag(entries: &[f64]) -> Matrix {
    let n = entries.len();
    Matrix::from_fn(n, n, |i, j| if i == j { c(entries[i], 0.0) } else { c(0.0, 0.0) })
}

pub fn real_vector(entries: &[f64]) -> Vector {
    Vector::from_iterator(entries.len(), entries.iter().map(|&x| c(x, 0.0)))
}

/// A vector as an `n × 1` matrix.
pub fn as_column(v: &Vector) -> Matrix {
    Matrix::from_column_slice(v.nrows(), 1, v.as_slice())
}

pub fn identity(n: usize) -> Matrix {
    Matrix::identity(n, n)
}

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    Matrix::zeros(rows, cols)
}

pub fn is_finite(a: &Matrix) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn ensure_finite(a: &Matrix) -> Result<()> {
    if is_finite(a) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

pub fn ensure_same_shape(a: &Matrix, b: &Matrix) -> Result<()> {
    if a.shape() == b.shape() {
        Ok(())
    } else {
        Err(Error::ShapeMismatch {
            left: a.shape(),
            right: b.shape(),
        })
    }
}

pub fn ensure_square(a: &Matrix) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare(a.shape()))
    }
}

pub fn frobenius(a: &Matrix) -> f64 {
    a.norm()
}

/// `‖A − B‖_F`.
pub fn distance(a: &Matrix, b: &Matrix) -> f64 {
    (a - b).norm()
}

pub fn hermitian_defect(a: &Matrix) -> f64 {
    (a - a.adjoint()).norm()
}

pub fn idempotency_defect(a: &Matrix) -> f64 {
    (a * a - a).norm()
}

/// Horizontal concatenation `[A | B]`.
pub fn hstack(a: &Matrix, b: &Matrix) -> Matrix {
    assert_eq!(a.nrows(), b.nrows(), "hstack needs equal row counts");
    let mut out = Matrix::zeros(a.nrows(), a.ncols() + b.ncols());
    out.columns_mut(0, a.ncols()).copy_from(a);
    out.columns_mut(a.ncols(), b.ncols()).copy_from(b);
    out
}

/// Vertical concatenation `[A ; B]`.
pub fn vstack(a: &Matrix, b: &Matrix) -> Matrix {
    assert_eq!(a.ncols(), b.ncols(), "vstack needs equal column counts");
    let mut out = Matrix::zeros(a.nrows() + b.nrows(), a.ncols());
    out.rows_mut(0, a.nrows()).copy_from(a);
    out.rows_mut(a.nrows(), b.nrows()).copy_from(b);
    out
}

/// Thin SVD. Fails loudly on non-finite input or non-convergence.
pub fn svd(a: &Matrix) -> Result<Svd> {
    ensure_finite(a)?;
    let (m, n) = a.shape();
    let k = m.min(n);
    if k == 0 {
        return Ok(Svd {
            u: Matrix::zeros(m, 0),
            singular_values: Vec::new(),
            v: Matrix::zeros(n, 0),
        });
    }
    let fa = faer::Mat::<Complex64>::from_fn(m, n, |i, j| a[(i, j)]);
    let dec = fa.thin_svd().map_err(|_| Error::SvdNoConvergence)?;
    let (fu, fs, fv) = (dec.U(), dec.S().column_vector(), dec.V());
    let u = Matrix::from_fn(m, k, |i, j| fu[(i, j)]);
    let v = Matrix::from_fn(n, k, |i, j| fv[(i, j)]);
    let singular_values: Vec<f64> = (0..k).map(|i| fs[i].re).collect();
    if singular_values.iter().any(|s| !s.is_finite()) {
        return Err(Error::SvdNoConvergence);
    }
    Ok(Svd {
        u,
        singular_values,
        v,
    })
}

/// Eigenvalues of the Hermitian part `(A + A*)/2`, in nondecreasing order.
pub fn hermitian_eigenvalues(a: &Matrix) -> Result<Vec<f64>> {
    ensure_square(a)?;
    ensure_finite(a)?;
    let n = a.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let h = (a + a.adjoint()).unscale(2.0);
    let fh = faer::Mat::<Complex64>::from_fn(n, n, |i, j| h[(i, j)]);
    let mut values = fh
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .map_err(|_| Error::SvdNoConvergence)?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Full set of right singular vectors (an n×n unitary) with the singular
/// values padded by zeros up to n.
fn svd_full_right(a: &Matrix) -> Result<Svd> {
    let (m, n) = a.shape();
    if m >= n {
        return svd(a);
    }
    let mut padded = Matrix::zeros(n, n);
    padded.rows_mut(0, m).copy_from(a);
    let dec = svd(&padded)?;
    Ok(dec)
}

fn count_above(values: &[f64], rtol: f64) -> usize {
    let smax = values.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    values.iter().filter(|&&s| s > rtol * smax).count()
}

/// Count of singular values strictly above `rank_rtol * σ_max`.
pub fn numerical_rank(a: &Matrix, tol: &ToleranceConfig) -> Result<usize> {
    Ok(rank_report(a, tol)?.rank)
}

/// Rank together with a flag telling whether any singular value sits within
/// a factor of ten of the cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    pub near_cutoff: bool,
}

pub fn rank_report(a: &Matrix, tol: &ToleranceConfig) -> Result<RankReport> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Ok(RankReport {
            rank: 0,
            near_cutoff: false,
        });
    }
    let dec = svd(a)?;
    let rtol = tol.rank_cutoff(m, n);
    Ok(rank_from_values(&dec.singular_values, rtol))
}

pub(crate) fn rank_from_values(values: &[f64], rtol: f64) -> RankReport {
    let smax = values.first().copied().unwrap_or(0.0);
    let rank = count_above(values, rtol);
    let cut = rtol * smax;
    let near_cutoff = smax > 0.0
        && values
            .iter()
            .any(|&s| s > cut / 10.0 && s < cut * 10.0);
    RankReport { rank, near_cutoff }
}

/// Orthonormal basis of `R(A)` as a [`Subspace`] of `C^rows`.
pub fn range_basis(a: &Matrix, tol: &ToleranceConfig) -> Result<Subspace> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Ok(Subspace::zero(m));
    }
    let dec = svd(a)?;
    let r = count_above(&dec.singular_values, tol.rank_cutoff(m, n));
    Ok(Subspace::from_orthonormal_unchecked(
        dec.u.columns(0, r).into_owned(),
    ))
}

/// Orthonormal basis of `N(A)` as a [`Subspace`] of `C^cols`.
pub fn null_basis(a: &Matrix, tol: &ToleranceConfig) -> Result<Subspace> {
    let (m, n) = a.shape();
    if n == 0 {
        return Ok(Subspace::zero(0));
    }
    if m == 0 {
        return Ok(Subspace::full(n));
    }
    let dec = svd_full_right(a)?;
    // Rank against the original shape; the padding only adds zero rows.
    let r = count_above(&dec.singular_values, tol.rank_cutoff(m, n));
    Ok(Subspace::from_orthonormal_unchecked(
        dec.v.columns(r, n - r).into_owned(),
    ))
}

/// Moore–Penrose inverse by SVD with the configured rank cutoff.
pub(crate) fn pinv_svd(a: &Matrix, tol: &ToleranceConfig) -> Result<Matrix> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Ok(Matrix::zeros(n, m));
    }
    let dec = svd(a)?;
    let r = count_above(&dec.singular_values, tol.rank_cutoff(m, n));
    let mut v = dec.v.columns(0, r).into_owned();
    for j in 0..r {
        v.column_mut(j).scale_mut(1.0 / dec.singular_values[j]);
    }
    Ok(v * dec.u.columns(0, r).adjoint())
}

/// 2-norm condition number restricted to the nonzero singular values.
pub fn condition_number(a: &Matrix, tol: &ToleranceConfig) -> Result<f64> {
    let (m, n) = a.shape();
    let dec = svd(a)?;
    let r = count_above(&dec.singular_values, tol.rank_cutoff(m, n));
    if r == 0 {
        return Ok(1.0);
    }
    Ok(dec.singular_values[0] / dec.singular_values[r - 1])
}

/// Inverse of a square matrix, `None` when it is numerically singular.
pub(crate) fn try_inverse(a: &Matrix) -> Option<Matrix> {
    if a.nrows() == 0 {
        return Some(a.clone());
    }
    a.clone().try_inverse()
}
