//! Seeded random instances: ordered pairs `A ≤ A + B` for each order
//! family, nested chains, rank-one perturbations and admissible complements.
//!
//! Every draw goes through a `ChaCha8Rng` seeded from an explicit `u64`, so
//! identical seeds give identical matrices on every platform.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, c, Matrix, ToleranceConfig};
use crate::subspace::Subspace;

/// Instances whose nonzero spectrum spreads further than this are redrawn.
pub const MAX_CONDITION: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    Minus,
    Star,
    Sharp,
    Core,
}

impl PairKind {
    pub const ALL: [PairKind; 4] = [PairKind::Minus, PairKind::Star, PairKind::Sharp, PairKind::Core];

    pub fn name(self) -> &'static str {
        match self {
            PairKind::Minus => "minus",
            PairKind::Star => "star",
            PairKind::Sharp => "sharp",
            PairKind::Core => "core",
        }
    }

    pub fn needs_square(self) -> bool {
        matches!(self, PairKind::Sharp | PairKind::Core)
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PairKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PairKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown instance kind '{s}'")))
    }
}

/// Shape and rank profile of a generated pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairSpec {
    pub kind: PairKind,
    pub rows: usize,
    pub cols: usize,
    pub rank_a: usize,
    pub rank_b: usize,
}

impl PairSpec {
    pub fn validate(&self) -> Result<()> {
        if self.kind.needs_square() && self.rows != self.cols {
            return Err(Error::InfeasibleDims(format!(
                "{} instances need square dimensions, got {}x{}",
                self.kind, self.rows, self.cols
            )));
        }
        if self.rank_a + self.rank_b > self.rows.min(self.cols) {
            return Err(Error::InfeasibleDims(format!(
                "ranks {}+{} exceed min({}, {})",
                self.rank_a, self.rank_b, self.rows, self.cols
            )));
        }
        Ok(())
    }
}

/// A pair with `A ≤ A + B` in the order named by `kind`.
#[derive(Debug, Clone)]
pub struct GeneratedPair {
    pub spec: PairSpec,
    pub seed: u64,
    pub a: Matrix,
    pub b: Matrix,
}

impl GeneratedPair {
    pub fn sum(&self) -> Matrix {
        &self.a + &self.b
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Entries i.i.d. standard complex Gaussian.
pub fn gaussian_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| {
        c(gaussian(rng), gaussian(rng)) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Haar-distributed unitary via QR of a Gaussian matrix with phase fix.
pub fn random_unitary(n: usize, rng: &mut impl Rng) -> Matrix {
    if n == 0 {
        return Matrix::zeros(0, 0);
    }
    let qr = gaussian_matrix(n, n, rng).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    q
}

/// `U·diag(σ)·V*` with σ drawn from `[1, 2]`, so the condition number is at most 2.
pub fn well_conditioned(n: usize, rng: &mut impl Rng) -> Matrix {
    let u = random_unitary(n, rng);
    let v = random_unitary(n, rng);
    let sigma: Vec<f64> = (0..n).map(|_| rng.random_range(1.0..=2.0)).collect();
    u * linalg::real_diag(&sigma) * v.adjoint()
}

/// Complex scalars with modulus in `[1, 2]` and uniform phase.
fn diagonal_values(k: usize, rng: &mut impl Rng) -> Vec<num_complex::Complex64> {
    (0..k)
        .map(|_| {
            let r: f64 = rng.random_range(1.0..=2.0);
            let t: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            num_complex::Complex64::from_polar(r, t)
        })
        .collect()
}

/// `rows × cols` zero matrix with `block` placed at `(offset, offset)`.
fn embed(rows: usize, cols: usize, offset: usize, block: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(rows, cols);
    out.view_mut((offset, offset), block.shape()).copy_from(block);
    out
}

fn diag_block(values: &[num_complex::Complex64]) -> Matrix {
    Matrix::from_diagonal(&nalgebra::DVector::from_column_slice(values))
}

/// Condition number of the nonzero part of `m`.
fn spread(m: &Matrix) -> Result<f64> {
    linalg::condition_number(m, &ToleranceConfig::default())
}

/// Draws a pair for `spec`, redrawing (from the same stream) whenever the
/// sum is worse conditioned than [`MAX_CONDITION`].
pub fn generate(spec: &PairSpec, seed: u64) -> Result<GeneratedPair> {
    spec.validate()?;
    let mut rng = rng_from_seed(seed);
    loop {
        let (a, b) = match spec.kind {
            PairKind::Minus => minus_blocks(spec, &mut rng),
            PairKind::Star => star_blocks(spec, &mut rng),
            PairKind::Sharp => sharp_blocks(spec, &mut rng),
            PairKind::Core => core_blocks(spec, &mut rng),
        };
        if spread(&(&a + &b))? <= MAX_CONDITION {
            return Ok(GeneratedPair {
                spec: *spec,
                seed,
                a,
                b,
            });
        }
    }
}

/// `A = S·diag(D₁,0,0)·T`, `B = S·diag(0,D₂,0)·T` with invertible `S`, `T`.
fn minus_blocks(spec: &PairSpec, rng: &mut impl Rng) -> (Matrix, Matrix) {
    let (m, n, r1, r2) = (spec.rows, spec.cols, spec.rank_a, spec.rank_b);
    let s = well_conditioned(m, rng);
    let t = well_conditioned(n, rng);
    let d1 = diag_block(&diagonal_values(r1, rng));
    let d2 = diag_block(&diagonal_values(r2, rng));
    let a = &s * embed(m, n, 0, &d1) * &t;
    let b = &s * embed(m, n, r1, &d2) * &t;
    (a, b)
}

/// Unitary `U`, `V` with full blocks: `A = U·diag(K₁,0,0)·V*`, `B = U·diag(0,K₂,0)·V*`.
fn star_blocks(spec: &PairSpec, rng: &mut impl Rng) -> (Matrix, Matrix) {
    let (m, n, r1, r2) = (spec.rows, spec.cols, spec.rank_a, spec.rank_b);
    let u = random_unitary(m, rng);
    let v = random_unitary(n, rng);
    let k1 = well_conditioned(r1, rng);
    let k2 = well_conditioned(r2, rng);
    let a = &u * embed(m, n, 0, &k1) * v.adjoint();
    let b = &u * embed(m, n, r1, &k2) * v.adjoint();
    (a, b)
}

/// Similarity `S·diag(K₁,0,0)·S⁻¹`, `S·diag(0,K₂,0)·S⁻¹` with invertible blocks.
fn sharp_blocks(spec: &PairSpec, rng: &mut impl Rng) -> (Matrix, Matrix) {
    let (n, r1, r2) = (spec.rows, spec.rank_a, spec.rank_b);
    let s = well_conditioned(n, rng);
    let s_inv = linalg::try_inverse(&s).expect("singular values lie in [1, 2]");
    let k1 = well_conditioned(r1, rng);
    let k2 = well_conditioned(r2, rng);
    let a = &s * embed(n, n, 0, &k1) * &s_inv;
    let b = &s * embed(n, n, r1, &k2) * &s_inv;
    (a, b)
}

/// Unitary similarity of `A = [[T, [0 | S₂]], [0, 0]]` and
/// `B = diag(0, K₂, 0)`, where `S₂` couples the leading block to the trailing
/// zero block. Then `A*B = 0 = BA` and `AB* = 0`, so `A` precedes `A + B` in
/// the core order on both `A` and `A*`.
fn core_blocks(spec: &PairSpec, rng: &mut impl Rng) -> (Matrix, Matrix) {
    let (n, r1, r2) = (spec.rows, spec.rank_a, spec.rank_b);
    let u = random_unitary(n, rng);
    let t = well_conditioned(r1, rng);
    let k2 = well_conditioned(r2, rng);
    let tail = n - r1 - r2;
    let mut inner = embed(n, n, 0, &t);
    if r1 > 0 && tail > 0 {
        let coupling = gaussian_matrix(r1, tail, rng);
        inner.view_mut((0, r1 + r2), (r1, tail)).copy_from(&coupling);
    }
    let a = &u * inner * u.adjoint();
    let b = &u * embed(n, n, r1, &k2) * u.adjoint();
    (a, b)
}

/// Nested chain `A ≤⁻ B ≤⁻ C` built from `S·diag(D₁,…)·T` with growing blocks.
pub fn minus_chain(rows: usize, cols: usize, ranks: [usize; 3], seed: u64) -> Result<[Matrix; 3]> {
    let total: usize = ranks.iter().sum();
    if total > rows.min(cols) {
        return Err(Error::InfeasibleDims(format!(
            "chain ranks {ranks:?} exceed min({rows}, {cols})"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let s = well_conditioned(rows, &mut rng);
    let t = well_conditioned(cols, &mut rng);
    let values = diagonal_values(total, &mut rng);
    let level = |k: usize| {
        let used: usize = ranks[..k].iter().sum();
        let mut d = vec![num_complex::Complex64::new(0.0, 0.0); total];
        d[..used].copy_from_slice(&values[..used]);
        &s * embed(rows, cols, 0, &diag_block(&d)) * &t
    };
    Ok([level(1), level(2), level(3)])
}

/// `A + u·v*` with Gaussian `u`, `v`.
pub fn rank_one_perturbation(a: &Matrix, seed: u64) -> Matrix {
    let mut rng = rng_from_seed(seed);
    let u = gaussian_matrix(a.nrows(), 1, &mut rng);
    let v = gaussian_matrix(a.ncols(), 1, &mut rng);
    a + u * v.adjoint()
}

/// Gaussian matrix of exact rank `rank`, as a product of two Gaussian factors.
pub fn random_rank_matrix(rows: usize, cols: usize, rank: usize, seed: u64) -> Result<Matrix> {
    if rank > rows.min(cols) {
        return Err(Error::InfeasibleDims(format!(
            "rank {rank} exceeds min({rows}, {cols})"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let left = gaussian_matrix(rows, rank, &mut rng);
    let right = gaussian_matrix(rank, cols, &mut rng);
    Ok(left * right)
}

/// A random complement of `s`: the span of `B_{S⊥} + B_S·G` for Gaussian `G`.
pub fn random_complement(s: &Subspace, rng: &mut impl Rng, tol: &ToleranceConfig) -> Result<Subspace> {
    let perp = s.complement();
    if perp.is_zero() || s.is_zero() {
        return Ok(perp);
    }
    let g = gaussian_matrix(s.dim(), perp.dim(), rng);
    Subspace::span(&(perp.basis() + s.basis() * g), tol)
}

/// Random admissible `(M, N)` for a reflexive inverse of `sum`:
/// `R(sum) ∔ M` fills the codomain and `N ∔ N(sum)` fills the domain.
pub fn admissible_complements(
    sum: &Matrix,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<(Subspace, Subspace)> {
    let mut rng = rng_from_seed(seed);
    let range = linalg::range_basis(sum, tol)?;
    let kernel = linalg::null_basis(sum, tol)?;
    let m = random_complement(&range, &mut rng, tol)?;
    let n = random_complement(&kernel, &mut rng, tol)?;
    Ok((m, n))
}
