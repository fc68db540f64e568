//! Generalized inverses of a sum `A + B` when `A ≤⁻ A + B`: optimal and
//! agreeing projection splits, the Fill–Fishkind formula for `(A+B)†`, the
//! reflexive inverse with prescribed range and null space, its Werner
//! decomposition, and inverse additivity under the star, sharp and core orders.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geninv;
use crate::linalg::{self, Matrix, ToleranceConfig};
use crate::orders::{self, OrderKind};
use crate::range_additivity;
use crate::subspace::{Projection, Subspace};

/// Projections realizing `A ≤⁻ A + B` and the combined projections built from them.
#[derive(Debug, Clone)]
pub struct SplitWitness {
    /// `A = P(A + B)`.
    pub p: Projection,
    /// `A = (A + B)Q`.
    pub q: Projection,
    /// `E = P_A·P + P_B·(I − P)`.
    pub e: Matrix,
    /// `F = P_{A*}·Q* + P_{B*}·(I − Q*)`, the adjoint-side analogue of `E`.
    pub f: Matrix,
    /// `E` is Hermitian.
    pub optimal: bool,
    /// `F` is Hermitian.
    pub optimal_adjoint: bool,
}

/// Scale for comparing an inverse `x` of `s` against another inverse of `s`:
/// `(1 + ‖X‖)(1 + ‖S‖‖X‖)`.
pub fn inverse_scale(s: &Matrix, x: &Matrix) -> f64 {
    (1.0 + x.norm()) * (1.0 + s.norm() * x.norm())
}

fn verify(what: &'static str, residual: f64, scale: f64, tol: &ToleranceConfig) -> Result<()> {
    let bound = tol.residual_bound() * scale;
    if residual <= bound {
        Ok(())
    } else {
        Err(Error::Verification {
            what,
            residual,
            bound,
        })
    }
}

fn require(kind: OrderKind, a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<()> {
    if orders::check(kind, a, b, tol)?.holds {
        Ok(())
    } else {
        Err(Error::OrderFails(kind))
    }
}

fn combined(pa: &Matrix, pb: &Matrix, p: &Matrix) -> Matrix {
    let n = p.nrows();
    pa * p + pb * (linalg::identity(n) - p)
}

impl SplitWitness {
    /// Checks `A = P(A+B)` and `A = (A+B)Q` for caller-supplied projections,
    /// then builds `E` and `F` and checks `E² = E` with `R(E) = R(A+B)`.
    pub fn from_projections(
        a: &Matrix,
        b: &Matrix,
        p: Projection,
        q: Projection,
        tol: &ToleranceConfig,
    ) -> Result<Self> {
        linalg::ensure_same_shape(a, b)?;
        let s = a + b;
        let scale = 1.0 + (p.matrix.norm() + q.matrix.norm()) * s.norm();
        verify("A = P(A+B)", linalg::distance(a, &(&p.matrix * &s)), scale, tol)?;
        verify("A = (A+B)Q", linalg::distance(a, &(&s * &q.matrix)), scale, tol)?;

        let ra = linalg::range_basis(a, tol)?;
        let rb = linalg::range_basis(b, tol)?;
        let ra_adj = linalg::range_basis(&a.adjoint(), tol)?;
        let rb_adj = linalg::range_basis(&b.adjoint(), tol)?;
        let e = combined(
            &ra.orthogonal_projection().matrix,
            &rb.orthogonal_projection().matrix,
            &p.matrix,
        );
        let f = combined(
            &ra_adj.orthogonal_projection().matrix,
            &rb_adj.orthogonal_projection().matrix,
            &q.matrix.adjoint(),
        );

        let e_scale = 1.0 + e.norm_squared();
        verify("E² = E", linalg::idempotency_defect(&e), e_scale, tol)?;
        let rs = linalg::range_basis(&s, tol)?;
        if !Subspace::span(&e, tol)?.equals(&rs, tol)? {
            return Err(Error::Verification {
                what: "R(E) = R(A+B)",
                residual: f64::NAN,
                bound: 0.0,
            });
        }
        let optimal = linalg::hermitian_defect(&e) <= tol.residual_bound() * (1.0 + e.norm());
        let optimal_adjoint = linalg::hermitian_defect(&f) <= tol.residual_bound() * (1.0 + f.norm());
        Ok(Self {
            p,
            q,
            e,
            f,
            optimal,
            optimal_adjoint,
        })
    }
}

/// `Q` with `A = (A+B)Q`, taken as the adjoint of
/// `P_{R(A*) ⊕ R(A*+B*)⊥ // R(B*)}`.
fn default_q(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<Projection> {
    let (a_adj, b_adj) = (a.adjoint(), b.adjoint());
    let keep = linalg::range_basis(&a_adj, tol)?
        .sum(&linalg::range_basis(&(&a_adj + &b_adj), tol)?.complement(), tol)?;
    let along = linalg::range_basis(&b_adj, tol)?;
    Ok(keep.oblique_projection(&along, tol)?.adjoint())
}

/// The optimal split with `M₁ = N(A*) ∩ N(B*)` and `N₁ = {0}`:
/// `P = P_{R(A) ⊕ R(A+B)⊥ // R(B)}`, and `Q` analogously on adjoints.
pub fn build_split(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<SplitWitness> {
    split_with_complements(a, b, None, None, tol)
}

/// `P = P_{R(A) + M₁ // R(B) + N₁}` for caller-chosen `M₁`, `N₁`; `None`
/// stands for the default `M₁ = R(A+B)⊥`, `N₁ = {0}`. The split is optimal
/// exactly when `M₁ ∔ N₁ = N(A*) ∩ N(B*)`.
pub fn split_with_complements(
    a: &Matrix,
    b: &Matrix,
    m1: Option<&Subspace>,
    n1: Option<&Subspace>,
    tol: &ToleranceConfig,
) -> Result<SplitWitness> {
    let s = a + b;
    require(OrderKind::Minus, a, &s, tol)?;
    let m = a.nrows();
    let outside = linalg::range_basis(&s, tol)?.complement();
    let m1 = m1.cloned().unwrap_or(outside);
    let n1 = n1.cloned().unwrap_or_else(|| Subspace::zero(m));
    let keep = linalg::range_basis(a, tol)?.sum(&m1, tol)?;
    let along = linalg::range_basis(b, tol)?.sum(&n1, tol)?;
    let p = keep.oblique_projection(&along, tol)?;
    let q = default_q(a, b, tol)?;
    SplitWitness::from_projections(a, b, p, q, tol)
}

/// `(A+B)† = Q·A†·P + (I − Q)·B†·(I − P)` with the optimal split, checked
/// against the SVD pseudoinverse of `A + B`.
pub fn fill_fishkind_pinv(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<Matrix> {
    let s = a + b;
    require(OrderKind::LeftMinus, a, &s, tol)?;
    let split = build_split(a, b, tol)?;
    let (m, n) = a.shape();
    let p = &split.p.matrix;
    let q = &split.q.matrix;
    let x = q * geninv::pinv(a, tol)? * p
        + (linalg::identity(n) - q) * geninv::pinv(b, tol)? * (linalg::identity(m) - p);

    let direct = geninv::pinv(&s, tol)?;
    let cond = linalg::condition_number(&s, tol)?;
    verify(
        "Fill–Fishkind formula equals pinv(A+B)",
        linalg::distance(&x, &direct),
        (1.0 + cond) * (1.0 + direct.norm()),
        tol,
    )?;
    Ok(x)
}

/// `S = (P_{N(B)⊥}·P_{N(A)})†` and `T = (P_{N(A*)}·P_{N(B*)⊥})†`. Both are
/// idempotent, and `I − S`, `I − T` are the `Q`, `P` of the optimal split.
pub fn st_projections(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<(Matrix, Matrix)> {
    linalg::ensure_same_shape(a, b)?;
    let ranges = range_additivity::disjoint_range_additivity(a, b, tol)?;
    let adj = range_additivity::disjoint_range_additivity(&a.adjoint(), &b.adjoint(), tol)?;
    if !(ranges.additive && adj.additive) {
        return Err(Error::OrderFails(OrderKind::Minus));
    }
    let na = linalg::null_basis(a, tol)?.orthogonal_projection().matrix;
    let nb_perp = linalg::range_basis(&b.adjoint(), tol)?.orthogonal_projection().matrix;
    let na_adj = linalg::range_basis(a, tol)?.complement().orthogonal_projection().matrix;
    let nb_adj_perp = linalg::range_basis(b, tol)?.orthogonal_projection().matrix;
    let s = geninv::pinv(&(nb_perp * na), tol)?;
    let t = geninv::pinv(&(na_adj * nb_adj_perp), tol)?;
    verify("S² = S", linalg::idempotency_defect(&s), 1.0 + s.norm_squared(), tol)?;
    verify("T² = T", linalg::idempotency_defect(&t), 1.0 + t.norm_squared(), tol)?;
    Ok((s, t))
}

/// A split agreeing with prescribed `(M, N)`: `P = P_{R(A)//R(B)∔M}`,
/// `Q = (P_{R(A*)//R(B*)∔N⊥})*`, and the internal complements used for the
/// reflexive inverses of the summands.
#[derive(Debug, Clone)]
pub struct AgreeingSplit {
    pub p: Projection,
    pub q: Projection,
    /// Null space prescribed for the inverse of `A`.
    pub n1: Subspace,
    /// Null space prescribed for the inverse of `B`.
    pub n2: Subspace,
    /// Range prescribed for the inverse of `A`.
    pub n1_star: Subspace,
    /// Range prescribed for the inverse of `B`.
    pub n2_star: Subspace,
    pub m: Subspace,
    pub n: Subspace,
}

fn check_complements(s: &Matrix, m: &Subspace, n: &Subspace, tol: &ToleranceConfig) -> Result<()> {
    let (rows, cols) = s.shape();
    if m.ambient_dim() != rows {
        return Err(Error::AmbientMismatch(m.ambient_dim(), rows));
    }
    if n.ambient_dim() != cols {
        return Err(Error::AmbientMismatch(n.ambient_dim(), cols));
    }
    let rs = linalg::range_basis(s, tol)?;
    if rs.dim() + m.dim() != rows || !rs.is_direct_sum(m, tol)? {
        return Err(Error::ComplementCondition(
            "M is not a complement of R(A+B)".to_string(),
        ));
    }
    let ns = linalg::null_basis(s, tol)?;
    if ns.dim() + n.dim() != cols || !ns.is_direct_sum(n, tol)? {
        return Err(Error::ComplementCondition(
            "N is not a complement of N(A+B)".to_string(),
        ));
    }
    Ok(())
}

/// Builds the agreeing split with the canonical internal complements
/// `N₁ = R(B) ∔ M`, `N₂ = R(A) ∔ M`, `N₁* = N(B) ∩ N`, `N₂* = N(A) ∩ N`,
/// and checks
/// `P_{R(A)//N₁}P + P_{R(B)//N₂}(I − P) = P_{R(A+B)//M}` together with its
/// domain-side counterpart
/// `Q·P_{N₁*//N(A)} + (I − Q)·P_{N₂*//N(B)} = P_{N//N(A+B)}`.
pub fn agreeing_split(
    a: &Matrix,
    b: &Matrix,
    m: &Subspace,
    n: &Subspace,
    tol: &ToleranceConfig,
) -> Result<AgreeingSplit> {
    let s = a + b;
    require(OrderKind::Minus, a, &s, tol)?;
    check_complements(&s, m, n, tol)?;

    let ra = linalg::range_basis(a, tol)?;
    let rb = linalg::range_basis(b, tol)?;
    let na = linalg::null_basis(a, tol)?;
    let nb = linalg::null_basis(b, tol)?;
    let n1 = rb.sum(m, tol)?;
    let n2 = ra.sum(m, tol)?;
    let p = ra.oblique_projection(&n1, tol)?;

    let ra_adj = linalg::range_basis(&a.adjoint(), tol)?;
    let rb_adj = linalg::range_basis(&b.adjoint(), tol)?;
    let q = ra_adj
        .oblique_projection(&rb_adj.sum(&n.complement(), tol)?, tol)?
        .adjoint();

    let split = AgreeingSplit {
        n1_star: nb.intersect(n, tol)?,
        n2_star: na.intersect(n, tol)?,
        p,
        q,
        n1,
        n2,
        m: m.clone(),
        n: n.clone(),
    };
    split.verify(a, b, tol)?;
    Ok(split)
}

impl AgreeingSplit {
    /// Checks the range-side and domain-side projection identities.
    pub fn verify(&self, a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<()> {
        let s = a + b;
        let (rows, cols) = s.shape();
        let ra = linalg::range_basis(a, tol)?;
        let rb = linalg::range_basis(b, tol)?;
        let rs = linalg::range_basis(&s, tol)?;
        let p = &self.p.matrix;
        let lhs = ra.oblique_projection(&self.n1, tol)?.matrix * p
            + rb.oblique_projection(&self.n2, tol)?.matrix * (linalg::identity(rows) - p);
        let rhs = rs.oblique_projection(&self.m, tol)?.matrix;
        let scale = 1.0 + lhs.norm() + rhs.norm();
        verify("range-side split identity", linalg::distance(&lhs, &rhs), scale, tol)?;

        let na = linalg::null_basis(a, tol)?;
        let nb = linalg::null_basis(b, tol)?;
        let ns = linalg::null_basis(&s, tol)?;
        let q = &self.q.matrix;
        let lhs = q * self.n1_star.oblique_projection(&na, tol)?.matrix
            + (linalg::identity(cols) - q) * self.n2_star.oblique_projection(&nb, tol)?.matrix;
        let rhs = self.n.oblique_projection(&ns, tol)?.matrix;
        let scale = 1.0 + lhs.norm() + rhs.norm();
        verify("domain-side split identity", linalg::distance(&lhs, &rhs), scale, tol)
    }

    /// The same split with a different but equally valid choice of internal
    /// complements: `N₁ = R(A)⊥`, `N₂ = M + (R(B) + M)⊥`, `N₁* = R(A*)`,
    /// `N₂* = N ⊖ (N ∩ N(B))`.
    pub fn with_alternate_complements(
        &self,
        a: &Matrix,
        b: &Matrix,
        tol: &ToleranceConfig,
    ) -> Result<AgreeingSplit> {
        let ra = linalg::range_basis(a, tol)?;
        let rb = linalg::range_basis(b, tol)?;
        let nb = linalg::null_basis(b, tol)?;
        let n2 = self.m.sum(&rb.sum(&self.m, tol)?.complement(), tol)?;
        Ok(AgreeingSplit {
            n1: ra.complement(),
            n2,
            n1_star: linalg::range_basis(&a.adjoint(), tol)?,
            n2_star: self.n.ominus(&nb, tol)?,
            ..self.clone()
        })
    }
}

/// `(A+B)^{(1,2)}` with range `N` and null space `M`, assembled as
/// `Q·A^{(1,2)}_{N₁*,N₁}·P + (I − Q)·B^{(1,2)}_{N₂*,N₂}·(I − P)`.
pub fn sum_reflexive_inverse(
    a: &Matrix,
    b: &Matrix,
    m: &Subspace,
    n: &Subspace,
    tol: &ToleranceConfig,
) -> Result<Matrix> {
    require(OrderKind::LeftMinus, a, &(a + b), tol)?;
    let split = agreeing_split(a, b, m, n, tol)?;
    reflexive_from_split(a, b, &split, tol)
}

/// Assembles the sum inverse from an explicit split and verifies
/// `SXS = S`, `XSX = X`, `R(X) = N` and `N(X) = M` for `S = A + B`.
pub fn reflexive_from_split(
    a: &Matrix,
    b: &Matrix,
    split: &AgreeingSplit,
    tol: &ToleranceConfig,
) -> Result<Matrix> {
    let s = a + b;
    let (rows, cols) = s.shape();
    let xa = geninv::reflexive_inverse(a, &split.n1_star, &split.n1, tol)?;
    let xb = geninv::reflexive_inverse(b, &split.n2_star, &split.n2, tol)?;
    let p = &split.p.matrix;
    let q = &split.q.matrix;
    let x = q * xa * p + (linalg::identity(cols) - q) * xb * (linalg::identity(rows) - p);

    let scale = inverse_scale(&s, &x) * (1.0 + s.norm());
    verify("(A+B)X(A+B) = A+B", linalg::distance(&(&s * &x * &s), &s), scale, tol)?;
    verify("X(A+B)X = X", linalg::distance(&(&x * &s * &x), &x), scale, tol)?;
    verify("N(X) = M", (&x * split.m.basis()).norm(), scale, tol)?;
    if !split.n.contains(&Subspace::span(&x, tol)?, tol)? {
        return Err(Error::Verification {
            what: "R(X) = N",
            residual: f64::NAN,
            bound: 0.0,
        });
    }
    Ok(x)
}

/// `X_A = A^{(1,2)}_{N(B)∩N, R(B)∔M}` and `X_B = B^{(1,2)}_{N(A)∩N, R(A)∔M}`,
/// checked to sum to the reflexive inverse of `A + B` and to satisfy
/// `X_A = Q·A^{(1,2)}_{N₁*,N₁}·P`.
pub fn werner_decomposition(
    a: &Matrix,
    b: &Matrix,
    m: &Subspace,
    n: &Subspace,
    tol: &ToleranceConfig,
) -> Result<(Matrix, Matrix)> {
    require(OrderKind::LeftMinus, a, &(a + b), tol)?;
    let split = agreeing_split(a, b, m, n, tol)?;
    let ra = linalg::range_basis(a, tol)?;
    let rb = linalg::range_basis(b, tol)?;
    let na = linalg::null_basis(a, tol)?;
    let nb = linalg::null_basis(b, tol)?;
    let xa = geninv::reflexive_inverse(a, &nb.intersect(n, tol)?, &rb.sum(m, tol)?, tol)?;
    let xb = geninv::reflexive_inverse(b, &na.intersect(n, tol)?, &ra.sum(m, tol)?, tol)?;

    let x = reflexive_from_split(a, b, &split, tol)?;
    let s = a + b;
    let scale = inverse_scale(&s, &x);
    verify("X_A + X_B = X", linalg::distance(&(&xa + &xb), &x), scale, tol)?;
    let inner = geninv::reflexive_inverse(a, &split.n1_star, &split.n1, tol)?;
    let sandwiched = &split.q.matrix * inner * &split.p.matrix;
    verify("X_A = Q·A⁻·P", linalg::distance(&xa, &sandwiched), scale, tol)?;
    Ok((xa, xb))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InverseKind {
    MoorePenrose,
    Group,
    Core,
}

/// `A^inv + B^inv` for the inverse matching the order `A ≤ A + B`:
/// Moore–Penrose under the star order, group under the sharp order, core
/// under the core order on both `A` and `A*`. Checked against the inverse of
/// `A + B` computed directly.
pub fn ordered_inverse_additivity(
    a: &Matrix,
    b: &Matrix,
    kind: InverseKind,
    tol: &ToleranceConfig,
) -> Result<Matrix> {
    let s = a + b;
    let (sum_of_inverses, direct) = match kind {
        InverseKind::MoorePenrose => {
            require(OrderKind::Star, a, &s, tol)?;
            (
                geninv::pinv(a, tol)? + geninv::pinv(b, tol)?,
                geninv::pinv(&s, tol)?,
            )
        }
        InverseKind::Group => {
            require(OrderKind::Sharp, a, &s, tol)?;
            (
                geninv::group_inverse(a, tol)? + geninv::group_inverse(b, tol)?,
                geninv::group_inverse(&s, tol)?,
            )
        }
        InverseKind::Core => {
            require(OrderKind::Core, a, &s, tol)?;
            require(OrderKind::Core, &a.adjoint(), &s.adjoint(), tol)?;
            (
                geninv::core_inverse(a, tol)? + geninv::core_inverse(b, tol)?,
                geninv::core_inverse(&s, tol)?,
            )
        }
    };
    verify(
        "inverse of the sum equals the sum of inverses",
        linalg::distance(&sum_of_inverses, &direct),
        inverse_scale(&s, &direct),
        tol,
    )?;
    Ok(sum_of_inverses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{distance, from_real_rows, identity, real_diag, zeros};

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn line(v: &[f64]) -> Subspace {
        Subspace::span(&from_real_rows(v.len(), 1, v), &tol()).unwrap()
    }

    #[test]
    fn split_of_orthogonal_pair() {
        let t = tol();
        let (a, b) = (real_diag(&[1.0, 0.0]), real_diag(&[0.0, 1.0]));
        let w = build_split(&a, &b, &t).unwrap();
        assert!(distance(&w.p.matrix, &real_diag(&[1.0, 0.0])) < 1e-14);
        assert!(distance(&w.e, &identity(2)) < 1e-14);
        assert!(w.optimal && w.optimal_adjoint);
    }

    #[test]
    fn split_absorbs_common_kernel() {
        let t = tol();
        let (a, b) = (real_diag(&[1.0, 0.0, 0.0]), real_diag(&[0.0, 2.0, 0.0]));
        let w = build_split(&a, &b, &t).unwrap();
        // P fixes e₁ and e₃ and kills e₂.
        assert!(distance(&w.p.matrix, &real_diag(&[1.0, 0.0, 1.0])) < 1e-14);
        assert!(distance(&w.e, &real_diag(&[1.0, 1.0, 0.0])) < 1e-14);
        assert!(w.optimal);
    }

    #[test]
    fn split_outside_common_kernel_is_not_optimal() {
        let t = tol();
        let (a, b) = (real_diag(&[1.0, 0.0, 0.0]), real_diag(&[0.0, 2.0, 0.0]));
        // M₁ = span{e₃ + e₂} leaves N(A*) ∩ N(B*) = span{e₃}.
        let m1 = line(&[0.0, 1.0, 1.0]);
        let w = split_with_complements(&a, &b, Some(&m1), None, &t).unwrap();
        assert!(!w.optimal);
        // E e₃ = −e₂ by hand: P e₃ = e₃ + e₂.
        assert!((w.e[(1, 2)].re + 1.0).abs() < 1e-14);
    }

    #[test]
    fn split_requires_minus() {
        let a = real_diag(&[1.0, 0.0]);
        let r = build_split(&a, &real_diag(&[1.0, 0.0]), &tol());
        assert!(matches!(r, Err(Error::OrderFails(OrderKind::Minus))));
    }

    #[test]
    fn fill_fishkind_examples() {
        let t = tol();
        let x = fill_fishkind_pinv(&real_diag(&[1.0, 0.0]), &real_diag(&[0.0, 1.0]), &t).unwrap();
        assert!(distance(&x, &identity(2)) < 1e-14);
        let x = fill_fishkind_pinv(&real_diag(&[2.0, 0.0, 0.0]), &real_diag(&[0.0, 4.0, 0.0]), &t)
            .unwrap();
        assert!(distance(&x, &real_diag(&[0.5, 0.25, 0.0])) < 1e-14);
        let r = fill_fishkind_pinv(&real_diag(&[1.0, 0.0]), &real_diag(&[1.0, 0.0]), &t);
        assert!(matches!(r, Err(Error::OrderFails(OrderKind::LeftMinus))));
    }

    #[test]
    fn fill_fishkind_with_oblique_ranges() {
        let t = tol();
        let a = from_real_rows(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let b = from_real_rows(2, 2, &[0.0, 1.0, 0.0, 1.0]);
        let x = fill_fishkind_pinv(&a, &b, &t).unwrap();
        let direct = geninv::pinv(&(&a + &b), &t).unwrap();
        assert!(distance(&x, &direct) < 1e-13);
    }

    #[test]
    fn st_examples() {
        let t = tol();
        let (s, tt) = st_projections(&real_diag(&[1.0, 0.0]), &real_diag(&[0.0, 1.0]), &t).unwrap();
        assert!(distance(&s, &real_diag(&[0.0, 1.0])) < 1e-14);
        assert!(distance(&tt, &real_diag(&[0.0, 1.0])) < 1e-14);
        let b = from_real_rows(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        let (s, _) = st_projections(&zeros(2, 2), &b, &t).unwrap();
        assert!(linalg::idempotency_defect(&s) < 1e-14);
    }

    #[test]
    fn st_complements_match_split() {
        let t = tol();
        let a = from_real_rows(3, 3, &[1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let b = from_real_rows(3, 3, &[0.0, 0.0, 0.0, 0.0, 1.0, 2.0, 0.0, 0.0, 0.0]);
        let (s, tt) = st_projections(&a, &b, &t).unwrap();
        let w = build_split(&a, &b, &t).unwrap();
        assert!(distance(&(identity(3) - s), &w.q.matrix) < 1e-12);
        assert!(distance(&(identity(3) - tt), &w.p.matrix) < 1e-12);
    }

    #[test]
    fn agreeing_split_orthogonal_choice() {
        let t = tol();
        let (a, b) = (real_diag(&[1.0, 0.0, 0.0]), real_diag(&[0.0, 2.0, 0.0]));
        let s = &a + &b;
        let m = linalg::range_basis(&s, &t).unwrap().complement();
        let n = linalg::range_basis(&s.adjoint(), &t).unwrap();
        let split = agreeing_split(&a, &b, &m, &n, &t).unwrap();
        // This is the optimal split with M₁ = {0} and N₁ = N(A*) ∩ N(B*).
        let w = SplitWitness::from_projections(&a, &b, split.p.clone(), split.q.clone(), &t).unwrap();
        assert!(w.optimal && w.optimal_adjoint);
        assert!(distance(&split.p.matrix, &real_diag(&[1.0, 0.0, 0.0])) < 1e-14);
    }

    #[test]
    fn agreeing_split_oblique_choice() {
        let t = tol();
        let (a, b) = (real_diag(&[1.0, 0.0, 0.0]), real_diag(&[0.0, 2.0, 0.0]));
        let m = line(&[0.5, 0.0, 1.0]);
        let n = linalg::range_basis(&(&a + &b).adjoint(), &t).unwrap();
        assert!(agreeing_split(&a, &b, &m, &n, &t).is_ok());
        let bad = line(&[1.0, 0.0, 0.0]);
        assert!(matches!(
            agreeing_split(&a, &b, &bad, &n, &t),
            Err(Error::ComplementCondition(_))
        ));
    }

    #[test]
    fn sum_reflexive_orthogonal_choice_is_pinv() {
        let t = tol();
        let a = from_real_rows(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let b = from_real_rows(2, 2, &[0.0, 1.0, 0.0, 1.0]);
        let s = &a + &b;
        let m = linalg::range_basis(&s, &t).unwrap().complement();
        let n = linalg::range_basis(&s.adjoint(), &t).unwrap();
        let x = sum_reflexive_inverse(&a, &b, &m, &n, &t).unwrap();
        assert!(distance(&x, &geninv::pinv(&s, &t).unwrap()) < 1e-13);
    }

    #[test]
    fn werner_examples() {
        let t = tol();
        let (a, b) = (real_diag(&[2.0, 0.0, 0.0]), real_diag(&[0.0, 4.0, 0.0]));
        let s = &a + &b;
        let m = linalg::range_basis(&s, &t).unwrap().complement();
        let n = linalg::range_basis(&s.adjoint(), &t).unwrap();
        let (xa, xb) = werner_decomposition(&a, &b, &m, &n, &t).unwrap();
        assert!(distance(&xa, &real_diag(&[0.5, 0.0, 0.0])) < 1e-14);
        assert!(distance(&xb, &real_diag(&[0.0, 0.25, 0.0])) < 1e-14);

        let m = linalg::range_basis(&b, &t).unwrap().complement();
        let n = linalg::range_basis(&b.adjoint(), &t).unwrap();
        let (xa, xb) = werner_decomposition(&zeros(3, 3), &b, &m, &n, &t).unwrap();
        assert!(xa.norm() < 1e-15);
        let direct = geninv::reflexive_inverse(&b, &n, &m, &t).unwrap();
        assert!(distance(&xb, &direct) < 1e-14);
    }

    #[test]
    fn inverse_additivity_examples() {
        let t = tol();
        let x = ordered_inverse_additivity(
            &real_diag(&[1.0, 0.0]),
            &real_diag(&[0.0, 1.0]),
            InverseKind::MoorePenrose,
            &t,
        )
        .unwrap();
        assert!(distance(&x, &identity(2)) < 1e-15);
        let x = ordered_inverse_additivity(
            &real_diag(&[1.0, 0.0]),
            &real_diag(&[0.0, 3.0]),
            InverseKind::Group,
            &t,
        )
        .unwrap();
        assert!(distance(&x, &real_diag(&[1.0, 1.0 / 3.0])) < 1e-15);
        let r = ordered_inverse_additivity(
            &real_diag(&[1.0, 0.0]),
            &from_real_rows(2, 2, &[0.0, 1.0, 0.0, 1.0]),
            InverseKind::MoorePenrose,
            &t,
        );
        assert!(matches!(r, Err(Error::OrderFails(OrderKind::Star))));
    }
}
