//! Decoupling `(A+B)x = a+b` into `Ax = a`, `Bx = b`, and the equivalence
//! between least squares for `A + B` and a weighted least-squares pair for
//! `A` and `B` under `A ≤⁻ₗ A + B`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geninv;
use crate::linalg::{self, Matrix, ToleranceConfig, Vector};
use crate::orders::{self, OrderKind};
use crate::subspace::Projection;
use crate::sum_inverses;

/// A Hermitian positive semidefinite weight defining `‖x‖_W = ⟨Wx, x⟩^{1/2}`.
#[derive(Debug, Clone)]
pub struct Weight {
    pub matrix: Matrix,
    pub source_projection: Option<Projection>,
}

impl Weight {
    pub fn identity(n: usize) -> Self {
        Self {
            matrix: linalg::identity(n),
            source_projection: None,
        }
    }

    /// `W = P*P + (I − P*)(I − P)`, positive definite for every idempotent `P`.
    pub fn from_projection(p: &Projection) -> Self {
        Self {
            matrix: p.symmetrizing_weight(),
            source_projection: Some(p.clone()),
        }
    }

    /// Accepts `w` after checking it is Hermitian with eigenvalues `≥ −residual_atol`.
    pub fn from_matrix(w: Matrix, tol: &ToleranceConfig) -> Result<Self> {
        linalg::ensure_square(&w)?;
        let scale = 1.0 + w.norm();
        if linalg::hermitian_defect(&w) > tol.residual_atol * scale {
            return Err(Error::InvalidWeight("not Hermitian".to_string()));
        }
        if self::min_eigenvalue(&w)? < -tol.residual_atol * scale {
            return Err(Error::InvalidWeight(
                "not positive semidefinite".to_string(),
            ));
        }
        Ok(Self {
            matrix: w,
            source_projection: None,
        })
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        min_eigenvalue(&self.matrix)
    }

    /// `‖x‖_W²`.
    pub fn seminorm_squared(&self, x: &Vector) -> f64 {
        (x.adjoint() * &self.matrix * x)[(0, 0)].re
    }
}

fn min_eigenvalue(w: &Matrix) -> Result<f64> {
    Ok(linalg::hermitian_eigenvalues(w)?
        .first()
        .copied()
        .unwrap_or(0.0))
}

fn in_range(a: &Matrix, y: &Vector, tol: &ToleranceConfig) -> Result<bool> {
    let cat = linalg::hstack(a, &linalg::as_column(y));
    Ok(linalg::numerical_rank(&cat, tol)? == linalg::numerical_rank(a, tol)?)
}

/// A solution of `(A+B)x = a + b`, which under `A ≤⁻ₗ A + B` with
/// `a ∈ R(A)`, `b ∈ R(B)` also solves `Ax = a` and `Bx = b`.
pub fn solve_system(
    a: &Matrix,
    b: &Matrix,
    rhs_a: &Vector,
    rhs_b: &Vector,
    tol: &ToleranceConfig,
) -> Result<Vector> {
    linalg::ensure_same_shape(a, b)?;
    let m = a.nrows();
    if rhs_a.nrows() != m || rhs_b.nrows() != m {
        return Err(Error::ShapeMismatch {
            left: a.shape(),
            right: (rhs_a.nrows().max(rhs_b.nrows()), 1),
        });
    }
    if !in_range(a, rhs_a, tol)? {
        return Err(Error::Membership("a is not in R(A)".to_string()));
    }
    if !in_range(b, rhs_b, tol)? {
        return Err(Error::Membership("b is not in R(B)".to_string()));
    }
    let s = a + b;
    if !orders::left_minus_order(a, &s, tol)?.holds {
        return Err(Error::OrderFails(OrderKind::LeftMinus));
    }
    let x = geninv::pinv(&s, tol)? * (rhs_a + rhs_b);
    let scale = (1.0 + rhs_a.norm() + rhs_b.norm()) * (1.0 + s.norm());
    for (what, residual) in [
        ("Ax = a", (a * &x - rhs_a).norm()),
        ("Bx = b", (b * &x - rhs_b).norm()),
    ] {
        if residual > tol.residual_bound() * scale {
            return Err(Error::Verification {
                what,
                residual,
                bound: tol.residual_bound() * scale,
            });
        }
    }
    Ok(x)
}

/// Minimum-norm solution of the normal equation `C*W(Cx − y) = 0`.
pub fn wlss_solve(c: &Matrix, y: &Vector, w: &Weight, tol: &ToleranceConfig) -> Result<Vector> {
    if c.nrows() != y.nrows() || w.matrix.nrows() != c.nrows() {
        return Err(Error::ShapeMismatch {
            left: c.shape(),
            right: (y.nrows(), w.matrix.nrows()),
        });
    }
    let cw = c.adjoint() * &w.matrix;
    let normal = &cw * c;
    Ok(geninv::pinv(&normal, tol)? * (cw * y))
}

/// `‖C*W(Cx − y)‖`.
pub fn normal_residual(c: &Matrix, x: &Vector, y: &Vector, w: &Matrix) -> f64 {
    (c.adjoint() * w * (c * x - y)).norm()
}

/// Cross-residuals of the decoupling, each already divided by its scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LssResiduals {
    /// `‖(A+B)*((A+B)x_joint − c)‖`.
    pub joint_normal_at_joint: f64,
    /// `‖A*W(A x_joint − c)‖`.
    pub weighted_a_at_joint: f64,
    /// `‖B*W(B x_joint − c)‖`.
    pub weighted_b_at_joint: f64,
    /// `‖A*W(A x_system − c)‖`.
    pub weighted_a_at_system: f64,
    /// `‖B*W(B x_system − c)‖`.
    pub weighted_b_at_system: f64,
    /// `‖(A+B)*((A+B)x_system − c)‖`.
    pub joint_normal_at_system: f64,
    /// Common scale `(1 + ‖W‖)(1 + ‖A‖ + ‖B‖)²(1 + ‖c‖)`.
    pub scale: f64,
}

impl LssResiduals {
    pub fn max(&self) -> f64 {
        [
            self.joint_normal_at_joint,
            self.weighted_a_at_joint,
            self.weighted_b_at_joint,
            self.weighted_a_at_system,
            self.weighted_b_at_system,
            self.joint_normal_at_system,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone)]
pub struct DecoupledLss {
    /// Minimum-norm least-squares solution of `(A+B)x = c`.
    pub x_joint: Vector,
    /// Minimum-norm solution of `A*W(Ax − c) = 0`, `B*W(Bx − c) = 0`.
    pub x_system: Vector,
    pub weight: Weight,
    pub residuals: LssResiduals,
}

/// Solves least squares for `A + B` jointly and as the weighted pair for `A`
/// and `B`, with `W` built from the optimal split, and checks that each
/// solution satisfies the other problem's normal equations.
pub fn decoupled_lss(a: &Matrix, b: &Matrix, c: &Vector, tol: &ToleranceConfig) -> Result<DecoupledLss> {
    linalg::ensure_same_shape(a, b)?;
    if c.nrows() != a.nrows() {
        return Err(Error::ShapeMismatch {
            left: a.shape(),
            right: (c.nrows(), 1),
        });
    }
    let s = a + b;
    if !orders::left_minus_order(a, &s, tol)?.holds {
        return Err(Error::OrderFails(OrderKind::LeftMinus));
    }
    let split = sum_inverses::build_split(a, b, tol)?;
    let weight = Weight::from_projection(&split.p);
    let w = &weight.matrix;

    let x_joint = geninv::pinv(&s, tol)? * c;
    let stacked = linalg::vstack(&(a.adjoint() * w * a), &(b.adjoint() * w * b));
    let stacked_rhs = linalg::vstack(
        &linalg::as_column(&(a.adjoint() * w * c)),
        &linalg::as_column(&(b.adjoint() * w * c)),
    );
    let x_system: Vector = (geninv::pinv(&stacked, tol)? * stacked_rhs).column(0).into_owned();

    let eye = linalg::identity(a.nrows());
    let scale = (1.0 + w.norm()) * (1.0 + a.norm() + b.norm()).powi(2) * (1.0 + c.norm());
    let residuals = LssResiduals {
        joint_normal_at_joint: normal_residual(&s, &x_joint, c, &eye) / scale,
        weighted_a_at_joint: normal_residual(a, &x_joint, c, w) / scale,
        weighted_b_at_joint: normal_residual(b, &x_joint, c, w) / scale,
        weighted_a_at_system: normal_residual(a, &x_system, c, w) / scale,
        weighted_b_at_system: normal_residual(b, &x_system, c, w) / scale,
        joint_normal_at_system: normal_residual(&s, &x_system, c, &eye) / scale,
        scale,
    };
    if residuals.max() > tol.residual_bound() {
        return Err(Error::Verification {
            what: "joint and weighted normal equations agree",
            residual: residuals.max(),
            bound: tol.residual_bound(),
        });
    }
    Ok(DecoupledLss {
        x_joint,
        x_system,
        weight,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{distance, from_real_rows, real_diag, real_vector, zeros};

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn system_examples() {
        let t = tol();
        let (a, b) = (real_diag(&[1.0, 0.0]), real_diag(&[0.0, 1.0]));
        let x = solve_system(&a, &b, &real_vector(&[1.0, 0.0]), &real_vector(&[0.0, 1.0]), &t).unwrap();
        assert!((x - real_vector(&[1.0, 1.0])).norm() < 1e-15);
        let x = solve_system(&a, &b, &real_vector(&[0.0, 0.0]), &real_vector(&[0.0, 0.0]), &t).unwrap();
        assert!(x.norm() == 0.0);
    }

    #[test]
    fn system_errors() {
        let t = tol();
        let (a, b) = (real_diag(&[1.0, 0.0]), real_diag(&[0.0, 1.0]));
        let r = solve_system(&a, &b, &real_vector(&[0.0, 1.0]), &real_vector(&[0.0, 1.0]), &t);
        assert!(matches!(r, Err(Error::Membership(_))));
        let r = solve_system(&a, &a, &real_vector(&[1.0, 0.0]), &real_vector(&[1.0, 0.0]), &t);
        assert!(matches!(r, Err(Error::OrderFails(OrderKind::LeftMinus))));
    }

    #[test]
    fn wlss_examples() {
        let t = tol();
        let x = wlss_solve(&real_diag(&[1.0, 0.0]), &real_vector(&[1.0, 1.0]), &Weight::identity(2), &t).unwrap();
        assert!((x - real_vector(&[1.0, 0.0])).norm() < 1e-15);

        let c = from_real_rows(2, 2, &[2.0, 1.0, 1.0, 1.0]);
        let w = Weight::from_matrix(real_diag(&[5.0, 0.5]), &t).unwrap();
        let x = wlss_solve(&c, &real_vector(&[3.0, 2.0]), &w, &t).unwrap();
        assert!((x - real_vector(&[1.0, 1.0])).norm() < 1e-13);
    }

    #[test]
    fn wlss_weighted_mean() {
        let t = tol();
        let c = from_real_rows(2, 1, &[1.0, 1.0]);
        let y = real_vector(&[0.0, 2.0]);
        let w = Weight::from_matrix(real_diag(&[3.0, 1.0]), &t).unwrap();
        let x = wlss_solve(&c, &y, &w, &t).unwrap();
        assert!((x[0].re - 0.5).abs() < 1e-15);
        // Brute force over a grid of scalars.
        let objective = |s: f64| 3.0 * s * s + (s - 2.0) * (s - 2.0);
        let best = (0..=10_000)
            .map(|i| -1.0 + 2.0 * f64::from(i) / 10_000.0)
            .min_by(|p, q| objective(*p).total_cmp(&objective(*q)))
            .unwrap();
        assert!((best - 0.5).abs() < 1e-3);
    }

    #[test]
    fn weight_validation() {
        let t = tol();
        assert!(Weight::from_matrix(real_diag(&[1.0, -1.0]), &t).is_err());
        assert!(Weight::from_matrix(from_real_rows(2, 2, &[1.0, 1.0, 0.0, 1.0]), &t).is_err());
        assert!(Weight::from_matrix(real_diag(&[1.0, 0.0]), &t).is_ok());
    }

    #[test]
    fn decoupled_diagonal() {
        let t = tol();
        let (a, b) = (real_diag(&[1.0, 0.0, 0.0]), real_diag(&[0.0, 2.0, 0.0]));
        let r = decoupled_lss(&a, &b, &real_vector(&[1.0, 1.0, 1.0]), &t).unwrap();
        assert!((&r.x_joint - real_vector(&[1.0, 0.5, 0.0])).norm() < 1e-15);
        assert!(r.residuals.max() < 1e-15);
    }

    #[test]
    fn decoupled_left_star_weight_is_identity() {
        let t = tol();
        let a = from_real_rows(2, 2, &[1.0, 1.0, 0.0, 0.0]);
        let b = from_real_rows(2, 2, &[0.0, 0.0, 1.0, -1.0]);
        let r = decoupled_lss(&a, &b, &real_vector(&[1.0, 2.0]), &t).unwrap();
        assert!(distance(&r.weight.matrix, &linalg::identity(2)) < 1e-14);
    }

    #[test]
    fn decoupled_oblique() {
        let t = tol();
        let a = from_real_rows(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let b = from_real_rows(2, 2, &[0.0, 1.0, 0.0, 1.0]);
        let r = decoupled_lss(&a, &b, &real_vector(&[1.0, 2.0]), &t).unwrap();
        assert!(r.weight.min_eigenvalue().unwrap() > 0.0);
        assert!(r.residuals.max() < 1e-14);
        assert!(decoupled_lss(&a, &a, &real_vector(&[1.0, 2.0]), &t).is_err());
        assert!(decoupled_lss(&zeros(2, 2), &b, &real_vector(&[1.0]), &t).is_err());
    }
}
