//! Partial-order predicates on complex matrices (minus, one-sided minus,
//! star family, sharp, core, weak minus) with witness extraction.
//!
//! Each predicate decides its verdict from one primary characterization and
//! evaluates the equivalent ones alongside, recording every verdict in the
//! report so disagreements near the tolerance boundary stay observable.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geninv;
use crate::linalg::{self, Matrix, RankReport, ToleranceConfig};
use crate::range_additivity::projection_killing;
use crate::subspace::{Projection, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    Minus,
    LeftMinus,
    RightMinus,
    Star,
    LeftStar,
    RightStar,
    Sharp,
    Core,
    WeakMinus,
}

impl OrderKind {
    pub const ALL: [OrderKind; 9] = [
        OrderKind::Minus,
        OrderKind::LeftMinus,
        OrderKind::RightMinus,
        OrderKind::Star,
        OrderKind::LeftStar,
        OrderKind::RightStar,
        OrderKind::Sharp,
        OrderKind::Core,
        OrderKind::WeakMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Minus => "minus",
            OrderKind::LeftMinus => "left_minus",
            OrderKind::RightMinus => "right_minus",
            OrderKind::Star => "star",
            OrderKind::LeftStar => "left_star",
            OrderKind::RightStar => "right_star",
            OrderKind::Sharp => "sharp",
            OrderKind::Core => "core",
            OrderKind::WeakMinus => "weak_minus",
        }
    }

    /// Orders defined only on square group-invertible matrices.
    pub fn needs_group_invertible(self) -> bool {
        matches!(self, OrderKind::Sharp | OrderKind::Core)
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_");
        OrderKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::Parse(format!("unknown order '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankData {
    pub rank_a: usize,
    pub rank_b: usize,
    pub rank_b_minus_a: usize,
}

/// Outcome of one order predicate on the pair `(A, B)`.
#[derive(Debug, Clone)]
pub struct OrderReport {
    pub order: OrderKind,
    pub holds: bool,
    pub verdicts: BTreeMap<&'static str, bool>,
    /// `A = P·B` when present.
    pub witness_p: Option<Projection>,
    /// `A* = Q·B*` when present.
    pub witness_q: Option<Projection>,
    pub rank_data: RankData,
    /// Some rank or angle decision sat within a factor of ten of its cutoff.
    pub boundary: bool,
}

impl OrderReport {
    pub fn verdicts_agree(&self) -> bool {
        self.verdicts.values().all(|&v| v == self.holds)
    }
}

/// Ranges, kernels and ranks of `A`, `B` and `D = B − A` on both sides.
struct Geometry {
    ra: Subspace,
    rb: Subspace,
    rd: Subspace,
    ra_adj: Subspace,
    rb_adj: Subspace,
    rd_adj: Subspace,
    rank_a: RankReport,
    rank_b: RankReport,
    rank_d: RankReport,
}

impl Geometry {
    fn new(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<Self> {
        linalg::ensure_same_shape(a, b)?;
        linalg::ensure_finite(a)?;
        linalg::ensure_finite(b)?;
        let d = b - a;
        let (a_adj, b_adj, d_adj) = (a.adjoint(), b.adjoint(), d.adjoint());
        Ok(Self {
            ra: linalg::range_basis(a, tol)?,
            rb: linalg::range_basis(b, tol)?,
            rd: linalg::range_basis(&d, tol)?,
            ra_adj: linalg::range_basis(&a_adj, tol)?,
            rb_adj: linalg::range_basis(&b_adj, tol)?,
            rd_adj: linalg::range_basis(&d_adj, tol)?,
            rank_a: linalg::rank_report(a, tol)?,
            rank_b: linalg::rank_report(b, tol)?,
            rank_d: linalg::rank_report(&d, tol)?,
        })
    }

    fn rank_data(&self) -> RankData {
        RankData {
            rank_a: self.rank_a.rank,
            rank_b: self.rank_b.rank,
            rank_b_minus_a: self.rank_d.rank,
        }
    }

    fn rank_boundary(&self) -> bool {
        self.rank_a.near_cutoff || self.rank_b.near_cutoff || self.rank_d.near_cutoff
    }

    fn rank_additive(&self) -> bool {
        self.rank_a.rank + self.rank_d.rank == self.rank_b.rank
    }
}

/// `whole = part ∔ rest`.
fn splits_directly(
    whole: &Subspace,
    part: &Subspace,
    rest: &Subspace,
    tol: &ToleranceConfig,
) -> Result<bool> {
    if !part.intersect(rest, tol)?.is_zero() {
        return Ok(false);
    }
    whole.equals(&part.sum(rest, tol)?, tol)
}

/// `whole = part ⊕ rest` with `part ⊥ rest`.
fn splits_orthogonally(
    whole: &Subspace,
    part: &Subspace,
    rest: &Subspace,
    tol: &ToleranceConfig,
) -> Result<bool> {
    let orthogonal = part.minimal_angle_cos(rest)? <= tol.subspace_cutoff(part.ambient_dim());
    Ok(orthogonal && whole.equals(&part.sum(rest, tol)?, tol)?)
}

fn angle_near_gap(c0: f64, tol: &ToleranceConfig) -> bool {
    let slack = 1.0 - c0;
    tol.angle_gap > 0.0 && slack > tol.angle_gap / 10.0 && slack < tol.angle_gap * 10.0
}

fn residual_scale(a: &Matrix, b: &Matrix) -> f64 {
    1.0 + a.norm() * (a.norm() + b.norm())
}

fn within(residual: f64, scale: f64, tol: &ToleranceConfig) -> bool {
    residual <= tol.residual_bound() * scale
}

fn witness_ok(a: &Matrix, b: &Matrix, p: &Projection, tol: &ToleranceConfig) -> bool {
    let residual = linalg::distance(a, &(&p.matrix * b));
    within(residual, 1.0 + p.matrix.norm() * b.norm(), tol)
}

/// `A ≤⁻ B`: `R(B) = R(A) ∔ R(B−A)` and `R(B*) = R(A*) ∔ R(B*−A*)`.
pub fn minus_order(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<OrderReport> {
    let g = Geometry::new(a, b, tol)?;
    let (m, n) = a.shape();

    let ranges = splits_directly(&g.rb, &g.ra, &g.rd, tol)?
        && splits_directly(&g.rb_adj, &g.ra_adj, &g.rd_adj, tol)?;

    let c0 = g.ra.minimal_angle_cos(&g.rd)?;
    let c0_adj = g.ra_adj.minimal_angle_cos(&g.rd_adj)?;
    let angles = c0 < 1.0 - tol.angle_gap && c0_adj < 1.0 - tol.angle_gap;

    // N(A) + N(B−A) and N(A*) + N(B*−A*) fill their spaces.
    let kernels = g
        .ra_adj
        .complement()
        .sum(&g.rd_adj.complement(), tol)?
        .is_full()
        && g.ra.complement().sum(&g.rd.complement(), tol)?.is_full();

    let p = if g.ra.intersect(&g.rd, tol)?.is_zero() {
        Some(projection_killing(&g.ra, &g.rd, tol)?)
    } else {
        None
    };
    let projection = match &p {
        Some(p) => witness_ok(a, b, p, tol) && g.rb.contains(&g.ra, tol)?,
        None => false,
    };

    // The range of B splits as a direct sum of the ranges of A and B − A,
    // checked on the codomain side alone.
    let quasidirect = splits_directly(&g.rb, &g.ra, &g.rd, tol)?;

    let mut verdicts = BTreeMap::new();
    verdicts.insert("ranges", ranges);
    verdicts.insert("quasidirect", quasidirect);
    verdicts.insert("rank", g.rank_additive());
    verdicts.insert("angles", angles);
    verdicts.insert("kernels", kernels);
    verdicts.insert("projection", projection);

    let (witness_p, witness_q) = if ranges {
        let q = projection_killing(&g.ra_adj, &g.rd_adj, tol)?;
        (p, Some(q))
    } else {
        (None, None)
    };
    debug_assert!(witness_p.as_ref().is_none_or(|p| p.ambient_dim() == m));
    debug_assert!(witness_q.as_ref().is_none_or(|q| q.ambient_dim() == n));

    Ok(OrderReport {
        order: OrderKind::Minus,
        holds: ranges,
        verdicts,
        witness_p,
        witness_q,
        rank_data: g.rank_data(),
        boundary: g.rank_boundary() || angle_near_gap(c0, tol) || angle_near_gap(c0_adj, tol),
    })
}

fn left_minus_from(
    a: &Matrix,
    b: &Matrix,
    g: &Geometry,
    tol: &ToleranceConfig,
) -> Result<(bool, BTreeMap<&'static str, bool>, Option<Projection>)> {
    let ranges = splits_directly(&g.rb, &g.ra, &g.rd, tol)?;

    // P = P_{R(A) // R(B−A) ⊕ N(B*)}.
    let along = g.rd.sum(&g.rb.complement(), tol)?;
    let p = if g.ra.dim() + along.dim() == g.ra.ambient_dim() && g.ra.is_direct_sum(&along, tol)? {
        Some(g.ra.oblique_projection(&along, tol)?)
    } else {
        None
    };
    let projection = match &p {
        Some(p) => witness_ok(a, b, p, tol) && g.rb.contains(&g.ra, tol)?,
        None => false,
    };

    // A* = Q B* for an idempotent Q (kernels of A and B−A span) with R(A) ∩ R(B−A) = {0}.
    let adjoint_projection = g
        .ra_adj
        .complement()
        .sum(&g.rd_adj.complement(), tol)?
        .is_full()
        && g.ra.intersect(&g.rd, tol)?.is_zero();

    let mut verdicts = BTreeMap::new();
    verdicts.insert("ranges", ranges);
    verdicts.insert("projection", projection);
    verdicts.insert("adjoint_projection", adjoint_projection);
    Ok((ranges, verdicts, if ranges { p } else { None }))
}

/// `A ≤⁻ₗ B`: `R(B) = R(A) ∔ R(B−A)`.
pub fn left_minus_order(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<OrderReport> {
    let g = Geometry::new(a, b, tol)?;
    let (holds, verdicts, witness_p) = left_minus_from(a, b, &g, tol)?;
    Ok(OrderReport {
        order: OrderKind::LeftMinus,
        holds,
        verdicts,
        witness_p,
        witness_q: None,
        rank_data: g.rank_data(),
        boundary: g.rank_boundary(),
    })
}

/// `A ≤⁻ᵣ B`: `R(B*) = R(A*) ∔ R(B*−A*)`; the left order on adjoints.
pub fn right_minus_order(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<OrderReport> {
    let (a_adj, b_adj) = (a.adjoint(), b.adjoint());
    let g = Geometry::new(&a_adj, &b_adj, tol)?;
    let (holds, verdicts, witness) = left_minus_from(&a_adj, &b_adj, &g, tol)?;
    Ok(OrderReport {
        order: OrderKind::RightMinus,
        holds,
        verdicts,
        witness_p: None,
        witness_q: witness,
        rank_data: g.rank_data(),
        boundary: g.rank_boundary(),
    })
}

fn left_gram_residual(a: &Matrix, b: &Matrix) -> f64 {
    let a_adj = a.adjoint();
    linalg::distance(&(&a_adj * a), &(&a_adj * b))
}

fn right_gram_residual(a: &Matrix, b: &Matrix) -> f64 {
    let a_adj = a.adjoint();
    linalg::distance(&(a * &a_adj), &(b * &a_adj))
}

/// `A ≤* B`: `A*A = A*B` and `AA* = BA*`.
pub fn star_order(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<OrderReport> {
    let g = Geometry::new(a, b, tol)?;
    let scale = residual_scale(a, b);
    let left_gram = within(left_gram_residual(a, b), scale, tol);
    let right_gram = within(right_gram_residual(a, b), scale, tol);
    let gram = left_gram && right_gram;

    let orthogonal_ranges = splits_orthogonally(&g.rb, &g.ra, &g.rd, tol)?
        && splits_orthogonally(&g.rb_adj, &g.ra_adj, &g.rd_adj, tol)?;
    let one_sided = left_gram && g.rb.contains(&g.ra, tol)? && right_gram && g.rb_adj.contains(&g.ra_adj, tol)?;

    let mut verdicts = BTreeMap::new();
    verdicts.insert("gram", gram);
    verdicts.insert("orthogonal_ranges", orthogonal_ranges);
    verdicts.insert("left_and_right", one_sided);

    let (witness_p, witness_q) = if gram {
        (
            Some(g.ra.orthogonal_projection()),
            Some(g.ra_adj.orthogonal_projection()),
        )
    } else {
        (None, None)
    };
    Ok(OrderReport {
        order: OrderKind::Star,
        holds: gram,
        verdicts,
        witness_p,
        witness_q,
        rank_data: g.rank_data(),
        boundary: g.rank_boundary(),
    })
}

fn left_star_parts(
    a: &Matrix,
    b: &Matrix,
    g: &Geometry,
    tol: &ToleranceConfig,
) -> Result<(bool, BTreeMap<&'static str, bool>)> {
    let gram = within(left_gram_residual(a, b), residual_scale(a, b), tol);
    let holds = gram && g.rb.contains(&g.ra, tol)?;
    let mut verdicts = BTreeMap::new();
    verdicts.insert("gram_and_inclusion", holds);
    verdicts.insert("orthogonal_ranges", splits_orthogonally(&g.rb, &g.ra, &g.rd, tol)?);
    Ok((holds, verdicts))
}

/// `A *≤ B`: `A*A = A*B` and `R(A) ⊆ R(B)`.
pub fn left_star_order(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<OrderReport> {
    let g = Geometry::new(a, b, tol)?;
    let (holds, verdicts) = left_star_parts(a, b, &g, tol)?;
    Ok(OrderReport {
        order: OrderKind::LeftStar,
        holds,
        verdicts,
        witness_p: holds.then(|| g.ra.orthogonal_projection()),
        witness_q: None,
        rank_data: g.rank_data(),
        boundary: g.rank_boundary(),
    })
}

/// `A ≤* B` on the right: `AA* = BA*` and `R(A*) ⊆ R(B*)`.
pub fn right_star_order(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<OrderReport> {
    let (a_adj, b_adj) = (a.adjoint(), b.adjoint());
    let g = Geometry::new(&a_adj, &b_adj, tol)?;
    let (holds, verdicts) = left_star_parts(&a_adj, &b_adj, &g, tol)?;
    Ok(OrderReport {
        order: OrderKind::RightStar,
        holds,
        verdicts,
        witness_p: None,
        witness_q: holds.then(|| g.ra.orthogonal_projection()),
        rank_data: g.rank_data(),
        boundary: g.rank_boundary(),
    })
}

fn require_group_invertible(a: &Matrix, tol: &ToleranceConfig) -> Result<()> {
    if geninv::is_group_invertible(a, tol)? {
        Ok(())
    } else {
        Err(Error::NotGroupInvertible)
    }
}

/// Projection witnesses `P = A X`, `Q = (X A)*` built from an inverse `X`
/// whose products with `A` are idempotent.
fn witnesses_from_inverse(
    a: &Matrix,
    x: &Matrix,
    g: &Geometry,
    tol: &ToleranceConfig,
) -> Result<(Projection, Projection)> {
    let p = Projection {
        matrix: a * x,
        range: g.ra.clone(),
        nullspace: Subspace::span(&(linalg::identity(a.nrows()) - a * x), tol)?,
    };
    let qa = (x * a).adjoint();
    let q = Projection {
        range: Subspace::span(&qa, tol)?,
        nullspace: Subspace::span(&(linalg::identity(a.ncols()) - &qa), tol)?,
        matrix: qa,
    };
    Ok((p, q))
}

/// `A ≤# B` on group-invertible matrices: `A² = BA = AB`.
pub fn sharp_order(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<OrderReport> {
    linalg::ensure_square(a)?;
    let g = Geometry::new(a, b, tol)?;
    require_group_invertible(a, tol)?;
    require_group_invertible(b, tol)?;
    let a2 = a * a;
    let scale = residual_scale(a, b);
    let holds = within(linalg::distance(&a2, &(b * a)), scale, tol)
        && within(linalg::distance(&a2, &(a * b)), scale, tol);

    let ag = geninv::group_inverse(a, tol)?;
    let gscale = 1.0 + ag.norm() * (a.norm() + b.norm());
    let by_inverse = within(linalg::distance(&(a * &ag), &(b * &ag)), gscale, tol)
        && within(linalg::distance(&(&ag * a), &(&ag * b)), gscale, tol);

    let mut verdicts = BTreeMap::new();
    verdicts.insert("commuting_square", holds);
    verdicts.insert("group_inverse", by_inverse);

    let (witness_p, witness_q) = if holds {
        let (p, q) = witnesses_from_inverse(a, &ag, &g, tol)?;
        (Some(p), Some(q))
    } else {
        (None, None)
    };
    Ok(OrderReport {
        order: OrderKind::Sharp,
        holds,
        verdicts,
        witness_p,
        witness_q,
        rank_data: g.rank_data(),
        boundary: g.rank_boundary(),
    })
}

/// Core order on group-invertible `A`: `A*A = A*B` and `A² = BA`.
pub fn core_order(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<OrderReport> {
    linalg::ensure_square(a)?;
    let g = Geometry::new(a, b, tol)?;
    require_group_invertible(a, tol)?;
    let scale = residual_scale(a, b);
    let holds = within(left_gram_residual(a, b), scale, tol)
        && within(linalg::distance(&(a * a), &(b * a)), scale, tol);

    let ac = geninv::core_inverse(a, tol)?;
    let cscale = 1.0 + ac.norm() * (a.norm() + b.norm());
    let by_inverse = within(linalg::distance(&(a * &ac), &(b * &ac)), cscale, tol)
        && within(linalg::distance(&(&ac * a), &(&ac * b)), cscale, tol);

    let mut verdicts = BTreeMap::new();
    verdicts.insert("gram_and_square", holds);
    verdicts.insert("core_inverse", by_inverse);

    let (witness_p, witness_q) = if holds {
        let (p, q) = witnesses_from_inverse(a, &ac, &g, tol)?;
        (Some(p), Some(q))
    } else {
        (None, None)
    };
    Ok(OrderReport {
        order: OrderKind::Core,
        holds,
        verdicts,
        witness_p,
        witness_q,
        rank_data: g.rank_data(),
        boundary: g.rank_boundary(),
    })
}

/// Weak minus order: `R(A) ∩ R(B−A) = {0}` and `R(A*) ∩ R(B*−A*) = {0}`.
pub fn weak_minus_order(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<OrderReport> {
    let g = Geometry::new(a, b, tol)?;
    let holds = g.ra.intersect(&g.rd, tol)?.is_zero() && g.ra_adj.intersect(&g.rd_adj, tol)?.is_zero();
    let mut verdicts = BTreeMap::new();
    verdicts.insert("intersections", holds);
    verdicts.insert("rank", g.rank_additive());
    Ok(OrderReport {
        order: OrderKind::WeakMinus,
        holds,
        verdicts,
        witness_p: None,
        witness_q: None,
        rank_data: g.rank_data(),
        boundary: g.rank_boundary(),
    })
}

/// Weights turning the minus witnesses into orthogonal projections.
#[derive(Debug, Clone)]
pub struct WeightedStar {
    /// `W₁ = Q′*Q′ + (I − Q′*)(I − Q′)` on the domain.
    pub w1: Matrix,
    /// `W₂ = P*P + (I − P*)(I − P)` on the codomain.
    pub w2: Matrix,
    /// `Q′ = Q*`, the idempotent with `A = B·Q′`.
    pub q_right: Matrix,
}

impl WeightedStar {
    /// Largest defect among `W₂P = P*W₂` and `W₁Q′ = Q′*W₁`.
    pub fn self_adjointness_defect(&self, p: &Matrix) -> f64 {
        let d2 = linalg::distance(&(&self.w2 * p), &(p.adjoint() * &self.w2));
        let d1 = linalg::distance(&(&self.w1 * &self.q_right), &(self.q_right.adjoint() * &self.w1));
        d1.max(d2)
    }
}

/// Builds the weights from a report that carries both witnesses.
pub fn weighted_star(report: &OrderReport) -> Option<WeightedStar> {
    let p = report.witness_p.as_ref()?;
    let q = report.witness_q.as_ref()?;
    let q_right = q.adjoint();
    Some(WeightedStar {
        w1: q_right.symmetrizing_weight(),
        w2: p.symmetrizing_weight(),
        q_right: q_right.matrix,
    })
}

/// Dispatches to the predicate for `kind`.
pub fn check(kind: OrderKind, a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<OrderReport> {
    match kind {
        OrderKind::Minus => minus_order(a, b, tol),
        OrderKind::LeftMinus => left_minus_order(a, b, tol),
        OrderKind::RightMinus => right_minus_order(a, b, tol),
        OrderKind::Star => star_order(a, b, tol),
        OrderKind::LeftStar => left_star_order(a, b, tol),
        OrderKind::RightStar => right_star_order(a, b, tol),
        OrderKind::Sharp => sharp_order(a, b, tol),
        OrderKind::Core => core_order(a, b, tol),
        OrderKind::WeakMinus => weak_minus_order(a, b, tol),
    }
}

/// An inner inverse `A⁻` with `A⁻A = A⁻B` and `(A − B)A⁻ = 0`, available
/// exactly when `A ≤⁻ₗ B`.
///
/// `A⁻` inverts `A` from `N(B−A) ⊖ N(A)` onto `R(A)` and vanishes on
/// `R(B−A) ⊕ R(B)⊥`.
pub fn inner_inverse_witness(a: &Matrix, b: &Matrix, tol: &ToleranceConfig) -> Result<Matrix> {
    let g = Geometry::new(a, b, tol)?;
    let (holds, _, _) = left_minus_from(a, b, &g, tol)?;
    if !holds {
        return Err(Error::OrderFails(OrderKind::LeftMinus));
    }
    let d = b - a;
    let na = linalg::null_basis(a, tol)?;
    let nd = linalg::null_basis(&d, tol)?;
    let domain = nd.ominus(&na, tol)?;
    let killed = g.rd.sum(&g.rb.complement(), tol)?;
    let x = geninv::reflexive_inverse(a, &domain, &killed, tol)?;

    let scale = 1.0 + x.norm() * (a.norm() + b.norm()) * (1.0 + a.norm());
    let checks = [
        ("A A⁻ A = A", linalg::distance(&(a * &x * a), a)),
        ("A⁻ A = A⁻ B", linalg::distance(&(&x * a), &(&x * b))),
        ("(A − B) A⁻ = 0", (&d * &x).norm()),
    ];
    for (what, residual) in checks {
        if !within(residual, scale, tol) {
            return Err(Error::Verification {
                what,
                residual,
                bound: tol.residual_bound() * scale,
            });
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{distance, from_real_rows, identity, real_diag, zeros};

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn pair_fixture() -> (Matrix, Matrix) {
        (real_diag(&[1.0, 0.0, 0.0]), real_diag(&[1.0, 2.0, 0.0]))
    }

    #[test]
    fn zero_is_below_everything() {
        let t = tol();
        let b = from_real_rows(2, 3, &[1.0, 2.0, 3.0, 0.0, 1.0, -1.0]);
        let a = zeros(2, 3);
        for kind in OrderKind::ALL {
            if kind.needs_group_invertible() {
                continue;
            }
            let r = check(kind, &a, &b, &t).unwrap();
            assert!(r.holds, "{kind}");
        }
        let r = minus_order(&a, &b, &t).unwrap();
        assert!(r.witness_p.unwrap().matrix.norm() < 1e-14);
    }

    #[test]
    fn reflexive_minus_with_witnesses() {
        let t = tol();
        let a = from_real_rows(3, 3, &[1.0, 2.0, 0.0, 0.0, 1.0, 1.0, 1.0, 3.0, 1.0]);
        let r = minus_order(&a, &a, &t).unwrap();
        assert!(r.holds && r.verdicts_agree());
        let p = r.witness_p.unwrap();
        let q = r.witness_q.unwrap();
        assert!(distance(&a, &(&p.matrix * &a)) < 1e-12);
        assert!(distance(&a.adjoint(), &(&q.matrix * a.adjoint())) < 1e-12);
    }

    #[test]
    fn minus_rank_examples() {
        let t = tol();
        let (a, b) = pair_fixture();
        let r = minus_order(&a, &b, &t).unwrap();
        assert!(r.holds && r.verdicts_agree());
        assert_eq!(
            r.rank_data,
            RankData {
                rank_a: 1,
                rank_b: 2,
                rank_b_minus_a: 1
            }
        );
        let r = minus_order(&real_diag(&[1.0, 0.0]), &real_diag(&[2.0, 0.0]), &t).unwrap();
        assert!(!r.holds && r.verdicts_agree());
        assert!(r.witness_p.is_none());
    }

    #[test]
    fn weighted_star_realization() {
        let t = tol();
        let a = from_real_rows(2, 2, &[1.0, 1.0, 0.0, 0.0]);
        let b = from_real_rows(2, 2, &[1.0, 1.0, 1.0, 3.0]);
        let r = minus_order(&a, &b, &t).unwrap();
        assert!(r.holds);
        let ws = weighted_star(&r).unwrap();
        let p = &r.witness_p.as_ref().unwrap().matrix;
        assert!(ws.self_adjointness_defect(p) < 1e-12);
        assert!(distance(&a, &(&b * &ws.q_right)) < 1e-12);
        for w in [&ws.w1, &ws.w2] {
            assert!(linalg::hermitian_eigenvalues(w).unwrap()[0] > 1e-3);
        }
    }

    #[test]
    fn one_sided_minus_examples() {
        let t = tol();
        let (a, b) = pair_fixture();
        let r = left_minus_order(&a, &b, &t).unwrap();
        assert!(r.holds && r.verdicts_agree());
        assert!(distance(&a, &(&r.witness_p.unwrap().matrix * &b)) < 1e-14);
        let r = right_minus_order(&a, &b, &t).unwrap();
        assert!(r.holds && r.verdicts_agree());
        assert!(distance(&a.adjoint(), &(&r.witness_q.unwrap().matrix * b.adjoint())) < 1e-14);
    }

    #[test]
    fn one_sided_minus_can_fail_on_one_side_only() {
        // A = e1 e1*, B − A = e2 e1*: ranges split, co-ranges coincide.
        let t = tol();
        let a = real_diag(&[1.0, 0.0]);
        let b = from_real_rows(2, 2, &[1.0, 0.0, 1.0, 0.0]);
        assert!(!left_minus_order(&a, &b, &t).unwrap().holds);
        let b2 = from_real_rows(2, 2, &[1.0, 1.0, 0.0, 0.0]);
        assert!(!left_minus_order(&a, &b2, &t).unwrap().holds);
        assert!(!minus_order(&a, &b, &t).unwrap().holds);
        assert!(!weak_minus_order(&a, &b, &t).unwrap().holds);
    }

    #[test]
    fn star_examples() {
        let t = tol();
        let a = real_diag(&[1.0, 0.0]);
        let r = star_order(&a, &real_diag(&[1.0, 1.0]), &t).unwrap();
        assert!(r.holds && r.verdicts_agree());
        let b = from_real_rows(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let r = left_star_order(&a, &b, &t).unwrap();
        assert!(!r.holds);
        assert!(r.verdicts_agree());
    }

    #[test]
    fn sharp_examples() {
        let t = tol();
        let a = from_real_rows(2, 2, &[2.0, 1.0, 0.0, 1.0]);
        assert!(sharp_order(&a, &a, &t).unwrap().holds);
        let r = sharp_order(&real_diag(&[1.0, 0.0]), &real_diag(&[1.0, 5.0]), &t).unwrap();
        assert!(r.holds && r.verdicts_agree());
        let p = r.witness_p.unwrap();
        assert!(distance(&real_diag(&[1.0, 0.0]), &(&p.matrix * real_diag(&[1.0, 5.0]))) < 1e-14);
        let nil = from_real_rows(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(sharp_order(&nil, &identity(2), &t), Err(Error::NotGroupInvertible)));
    }

    #[test]
    fn core_examples() {
        let t = tol();
        let a = from_real_rows(2, 2, &[2.0, 1.0, 0.0, 1.0]);
        assert!(core_order(&a, &a, &t).unwrap().holds);
        let r = core_order(&real_diag(&[1.0, 0.0]), &real_diag(&[1.0, 5.0]), &t).unwrap();
        assert!(r.holds && r.verdicts_agree());
        // B = [[1,0],[1,0]]: A*B = diag(1,0) = A*A, but BA = [[1,0],[1,0]] ≠ A².
        let b = from_real_rows(2, 2, &[1.0, 0.0, 1.0, 0.0]);
        let r = core_order(&real_diag(&[1.0, 0.0]), &b, &t).unwrap();
        assert!(!r.holds && r.verdicts_agree());
        let nil = from_real_rows(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(core_order(&nil, &identity(2), &t), Err(Error::NotGroupInvertible)));
    }

    #[test]
    fn weak_minus_examples() {
        let t = tol();
        let (a, b) = pair_fixture();
        assert!(weak_minus_order(&zeros(3, 3), &b, &t).unwrap().holds);
        assert!(weak_minus_order(&a, &b, &t).unwrap().holds);
    }

    #[test]
    fn inner_inverse_examples() {
        let t = tol();
        let x = inner_inverse_witness(&identity(3), &identity(3), &t).unwrap();
        assert!(distance(&x, &identity(3)) < 1e-14);
        let (a, b) = pair_fixture();
        let x = inner_inverse_witness(&a, &b, &t).unwrap();
        assert!(distance(&x, &real_diag(&[1.0, 0.0, 0.0])) < 1e-14);
        let x = inner_inverse_witness(&zeros(3, 3), &b, &t).unwrap();
        assert!(x.norm() < 1e-15);
        let err = inner_inverse_witness(&real_diag(&[1.0, 0.0]), &real_diag(&[2.0, 0.0]), &t);
        assert!(matches!(err, Err(Error::OrderFails(OrderKind::LeftMinus))));
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let r = minus_order(&zeros(2, 2), &zeros(2, 3), &tol());
        assert!(matches!(r, Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn order_names_round_trip() {
        for kind in OrderKind::ALL {
            assert_eq!(kind.name().parse::<OrderKind>().unwrap(), kind);
        }
        assert_eq!("left-minus".parse::<OrderKind>().unwrap(), OrderKind::LeftMinus);
        assert!("bogus".parse::<OrderKind>().is_err());
    }
}
