//! Discretized indefinite Nelson space.
//!
//! Vectors are grid functions extended by two singular directions, `δ0`
//! and `w` (the limit of `f(τ−n)/n`). Only function–function products go
//! through quadrature; every product involving `δ0` or `w` is analytic:
//!
//! ```text
//! ⟨f, g⟩  = ∫∫ f̄(τ) (−|τ−σ|/2) g(σ)
//! ⟨δ0, f⟩ = −½ ∫ |σ| f(σ)      ⟨w, f⟩ = −½ ∫ f
//! ⟨δ0, w⟩ = −½                 ⟨δ0, δ0⟩ = ⟨w, w⟩ = 0
//! ```

mod families;
mod grid;
mod markov;
mod os;

pub use families::{family, FamilySpec};
pub use grid::{Grid, MAX_GRID_POINTS};
pub use markov::{
    conditional_cross_covariance, conditional_independence_check, indefinite_project, markov_projection_report,
    markov_projection_residual, MarkovReport, Projector, CONDITION_THRESHOLD,
};
pub use os::{duality_check, minus_laplacian, os_gram, os_inner, DualityReport, OsInner};

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gram::GramMatrix;

pub const MAX_FAMILY_SIZE: usize = 200;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Debug)]
pub struct ExtendedVector {
    grid: Arc<Grid>,
    /// Function values on the grid.
    pub h: Vec<Complex64>,
    /// Coefficient of `δ0`.
    pub a: Complex64,
    /// Coefficient of `w`.
    pub b: Complex64,
}

impl PartialEq for ExtendedVector {
    fn eq(&self, other: &Self) -> bool {
        same_grid(&self.grid, &other.grid) && self.h == other.h && self.a == other.a && self.b == other.b
    }
}

fn same_grid(a: &Arc<Grid>, b: &Arc<Grid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl ExtendedVector {
    pub fn new(grid: Arc<Grid>, h: Vec<Complex64>, a: Complex64, b: Complex64) -> Result<Self> {
        if h.len() != grid.len() {
            return Err(Error::LengthMismatch {
                left: h.len(),
                right: grid.len(),
            });
        }
        Ok(Self { grid, h, a, b })
    }

    pub fn zero(grid: Arc<Grid>) -> Self {
        let n = grid.len();
        Self {
            grid,
            h: vec![ZERO; n],
            a: ZERO,
            b: ZERO,
        }
    }

    pub fn function(grid: Arc<Grid>, h: Vec<Complex64>) -> Result<Self> {
        Self::new(grid, h, ZERO, ZERO)
    }

    pub fn real_function(grid: Arc<Grid>, values: &[f64]) -> Result<Self> {
        Self::function(grid, values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_fn(grid: Arc<Grid>, f: impl Fn(f64) -> f64) -> Self {
        let h = grid.taus().iter().map(|&t| Complex64::new(f(t), 0.0)).collect();
        Self {
            grid,
            h,
            a: ZERO,
            b: ZERO,
        }
    }

    pub fn delta0(grid: Arc<Grid>) -> Self {
        Self {
            a: Complex64::new(1.0, 0.0),
            ..Self::zero(grid)
        }
    }

    pub fn w(grid: Arc<Grid>) -> Self {
        Self {
            b: Complex64::new(1.0, 0.0),
            ..Self::zero(grid)
        }
    }

    /// Unit-mass spike `e_k / step` at the grid point `τ`.
    pub fn grid_delta(grid: Arc<Grid>, tau: f64) -> Result<Self> {
        let k = grid
            .index_of(tau)
            .ok_or_else(|| Error::GridMismatch(format!("{tau} is not a grid point")))?;
        let mut v = Self::zero(grid);
        v.h[k] = Complex64::new(1.0 / v.grid.step(), 0.0);
        Ok(v)
    }

    /// `u_α = α δ0 + α⁻¹ w`, the negative eigenvector of `η_α`.
    pub fn u_alpha(grid: Arc<Grid>, alpha: f64) -> Self {
        Self {
            a: Complex64::new(alpha, 0.0),
            b: Complex64::new(1.0 / alpha, 0.0),
            ..Self::zero(grid)
        }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn is_function(&self) -> bool {
        self.a == ZERO && self.b == ZERO
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !same_grid(&self.grid, &other.grid) {
            return Err(Error::GridMismatch("vectors live on different grids".into()));
        }
        Ok(())
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: Complex64, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            grid: self.grid.clone(),
            h: self.h.iter().zip(&other.h).map(|(x, y)| x + c * y).collect(),
            a: self.a + c * other.a,
            b: self.b + c * other.b,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(Complex64::new(-1.0, 0.0), other)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            grid: self.grid.clone(),
            h: self.h.iter().map(|x| x * c).collect(),
            a: self.a * c,
            b: self.b * c,
        }
    }

    /// Time reflection; `δ0` and `w` are reflection invariant.
    pub fn theta(&self) -> Result<Self> {
        if !self.grid.is_symmetric() {
            return Err(Error::GridMismatch("time reflection needs a grid symmetric about 0".into()));
        }
        let mut h = self.h.clone();
        h.reverse();
        Ok(Self { h, ..self.clone() })
    }

    /// Largest componentwise distance, with function values weighted by
    /// the quadrature step.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        let d = self.sub(other)?;
        let step = self.grid.step();
        Ok(d.h.iter().map(|x| x.norm() * step).fold(d.a.norm().max(d.b.norm()), f64::max))
    }

    /// `∫ f`.
    fn mass(&self) -> Complex64 {
        self.h.iter().sum::<Complex64>() * self.grid.step()
    }

    /// `∫ |σ| f(σ)`.
    fn abs_moment(&self) -> Complex64 {
        self.h
            .iter()
            .zip(self.grid.taus())
            .map(|(x, t)| x * t.abs())
            .sum::<Complex64>()
            * self.grid.step()
    }
}

/// `(K h)_i = Σ_j (−|τ_i − τ_j|/2) h_j step`, the kernel applied to the
/// function part.
fn apply_kernel(grid: &Grid, h: &[Complex64]) -> Vec<Complex64> {
    let n = h.len();
    let step = grid.step();
    // Toeplitz kernel: prefix sums give O(n) per evaluation.
    // Σ_j |i−j| h_j = Σ_{j<i} (i−j) h_j + Σ_{j>i} (j−i) h_j
    let mut left_mass = ZERO;
    let mut left_moment = ZERO;
    let mut left = vec![ZERO; n];
    for i in 0..n {
        // left[i] = Σ_{j<i} (i−j) h_j
        left[i] = left_moment;
        left_mass += h[i];
        left_moment += left_mass;
    }
    let mut right_mass = ZERO;
    let mut right_moment = ZERO;
    let mut out = vec![ZERO; n];
    for i in (0..n).rev() {
        out[i] = (left[i] + right_moment) * (-0.5 * step * step);
        right_mass += h[i];
        right_moment += right_mass;
    }
    out
}

/// Sesquilinear (antilinear in `u`) inner product; see the module docs.
pub fn inner_extended(u: &ExtendedVector, v: &ExtendedVector) -> Result<Complex64> {
    u.check(v)?;
    let kv = apply_kernel(&u.grid, &v.h);
    Ok(inner_with_kernel(u, v, &kv))
}

fn inner_with_kernel(u: &ExtendedVector, v: &ExtendedVector, kv: &[Complex64]) -> Complex64 {
    let ff: Complex64 = u.h.iter().zip(kv).map(|(x, y)| x.conj() * y).sum::<Complex64>() * u.grid.step();
    let d0_v = -0.5 * v.abs_moment();
    let w_v = -0.5 * v.mass();
    let u_d0 = (-0.5 * u.abs_moment()).conj();
    let u_w = (-0.5 * u.mass()).conj();
    ff + u.a.conj() * d0_v + u.b.conj() * w_v + u_d0 * v.a + u_w * v.b - 0.5 * (u.a.conj() * v.b + u.b.conj() * v.a)
}

/// `u = a δ0 + b w + h` with `⟨δ0, h⟩ = ⟨w, h⟩ = 0`.
pub fn decompose(u: &ExtendedVector) -> Result<(Complex64, Complex64, ExtendedVector)> {
    let d0 = ExtendedVector::delta0(u.grid.clone());
    let w = ExtendedVector::w(u.grid.clone());
    let a = -2.0 * inner_extended(&w, u)?;
    let b = -2.0 * inner_extended(&d0, u)?;
    let h = u.axpy(-a, &d0)?.axpy(-b, &w)?;
    Ok((a, b, h))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidInput(format!("alpha must be positive, got {alpha}")));
    }
    Ok(())
}

/// `η_α u = u + 2 u_α ⟨u_α, u⟩`.
pub fn eta_alpha_apply(u: &ExtendedVector, alpha: f64) -> Result<ExtendedVector> {
    check_alpha(alpha)?;
    let ua = ExtendedVector::u_alpha(u.grid.clone(), alpha);
    let c = 2.0 * inner_extended(&ua, u)?;
    u.axpy(c, &ua)
}

/// `[u, v]_α = ⟨u, η_α v⟩`.
pub fn krein_inner(u: &ExtendedVector, v: &ExtendedVector, alpha: f64) -> Result<Complex64> {
    inner_extended(u, &eta_alpha_apply(v, alpha)?)
}

/// `√[u, u]_α`.
pub fn krein_norm(u: &ExtendedVector, alpha: f64) -> Result<f64> {
    Ok(krein_inner(u, u, alpha)?.re.max(0.0).sqrt())
}

/// Gram matrix `G_ij = ⟨u_i, u_j⟩` assembled entrywise.
pub fn gram_entries(family: &[ExtendedVector]) -> Result<DMatrix<Complex64>> {
    if let Some(first) = family.first() {
        for v in family {
            first.check(v)?;
        }
    }
    let kernels: Vec<Vec<Complex64>> = family.par_iter().map(|v| apply_kernel(&v.grid, &v.h)).collect();
    let n = family.len();
    let entries: Vec<Complex64> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k % n, k / n);
            inner_with_kernel(&family[i], &family[j], &kernels[j])
        })
        .collect();
    Ok(DMatrix::from_vec(n, n, entries))
}

/// Inertia of the Gram matrix of `family` under `⟨,⟩`.
pub fn signature(family: &[ExtendedVector]) -> Result<GramMatrix> {
    if family.len() > MAX_FAMILY_SIZE {
        return Err(Error::ResourceLimit {
            len: family.len(),
            bound: MAX_FAMILY_SIZE,
        });
    }
    Ok(GramMatrix::new(gram_entries(family)?))
}
