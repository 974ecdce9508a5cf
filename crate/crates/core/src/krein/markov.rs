//! Indefinite-orthogonal projections, the Markov identities `E₊E₋ = E₀`,
//! and the Gaussian conditional-independence check for `dμ_α`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::{check_alpha, inner_extended, krein_norm, ExtendedVector, Grid};
use crate::error::{Error, Result};
use crate::schwinger::krein_kernel;

/// Gram matrices with a larger condition number count as degenerate.
pub const CONDITION_THRESHOLD: f64 = 1e8;

fn condition_number(m: &DMatrix<Complex64>) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// `P u = Σ_j c_j b_j` with `G c = r`, `G_ij = ⟨b_i, b_j⟩`, `r_i = ⟨b_i, u⟩`.
#[derive(Clone, Debug)]
pub struct Projector {
    basis: Vec<ExtendedVector>,
    inverse: DMatrix<Complex64>,
}

impl Projector {
    pub fn new(basis: Vec<ExtendedVector>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::Singular("empty basis".into()));
        }
        let g = super::gram_entries(&basis)?;
        let cond = condition_number(&g);
        if !(cond <= CONDITION_THRESHOLD) {
            return Err(Error::Singular(format!(
                "condition number {cond:.3e} exceeds {CONDITION_THRESHOLD:.0e}"
            )));
        }
        let inverse = g
            .try_inverse()
            .ok_or_else(|| Error::Singular("Gram matrix is not invertible".into()))?;
        Ok(Self { basis, inverse })
    }

    pub fn apply(&self, u: &ExtendedVector) -> Result<ExtendedVector> {
        let r = DVector::from_iterator(
            self.basis.len(),
            self.basis.iter().map(|b| inner_extended(b, u)).collect::<Result<Vec<_>>>()?,
        );
        let c = &self.inverse * r;
        let mut out = ExtendedVector::zero(u.grid().clone());
        for (cj, bj) in c.iter().zip(&self.basis) {
            out = out.axpy(*cj, bj)?;
        }
        Ok(out)
    }
}

pub fn indefinite_project(basis: &[ExtendedVector], u: &ExtendedVector) -> Result<ExtendedVector> {
    Projector::new(basis.to_vec())?.apply(u)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MarkovReport {
    /// `max ‖(E₊E₋ − E₀)u‖ / ‖u‖` over the probes, `η_α`-norms.
    pub plus_minus: f64,
    /// Same for `E₋E₊`.
    pub minus_plus: f64,
    pub idempotence_plus: f64,
    pub idempotence_minus: f64,
    /// `max ‖E±u − u‖ / ‖u‖` for `u ∈ span{δ0, w}`.
    pub time_zero_fixed: f64,
}

impl MarkovReport {
    pub fn max_commutation(&self) -> f64 {
        self.plus_minus.max(self.minus_plus)
    }

    pub fn max_idempotence(&self) -> f64 {
        self.idempotence_plus.max(self.idempotence_minus)
    }
}

fn side_basis(grid: &std::sync::Arc<Grid>, n: usize, sign: f64) -> Result<Vec<ExtendedVector>> {
    let mut b = vec![ExtendedVector::delta0(grid.clone()), ExtendedVector::w(grid.clone())];
    for k in 1..=n {
        b.push(ExtendedVector::grid_delta(grid.clone(), sign * k as f64 * grid.step())?);
    }
    Ok(b)
}

/// Probe vectors: every grid delta, `δ0`, `w`, and a few smooth bumps.
fn probes(grid: &std::sync::Arc<Grid>) -> Result<Vec<ExtendedVector>> {
    let mut p = vec![ExtendedVector::delta0(grid.clone()), ExtendedVector::w(grid.clone())];
    for &t in grid.taus() {
        p.push(ExtendedVector::grid_delta(grid.clone(), t)?);
    }
    let (lo, hi) = (grid.taus()[0], grid.taus()[grid.len() - 1]);
    let width = (hi - lo).max(grid.step()) / 10.0;
    for frac in [0.3, 0.5, 0.8] {
        let c0 = lo + frac * (hi - lo);
        p.push(ExtendedVector::from_fn(grid.clone(), |t| {
            (-(t - c0) * (t - c0) / (2.0 * width * width)).exp() * (1.0 + 0.3 * t)
        }));
    }
    Ok(p)
}

/// Builds `E₊` from grid deltas at `k·step` (`k = 1..n`) plus `δ0, w`,
/// `E₋` from the mirror points, and `E₀` from `{δ0, w}`; residuals are
/// measured in the `η_α` norm.
pub fn markov_projection_report(grid: &std::sync::Arc<Grid>, n_per_side: usize, alpha: f64) -> Result<MarkovReport> {
    check_alpha(alpha)?;
    if n_per_side < 2 {
        return Err(Error::InvalidInput("need at least two points per side".into()));
    }
    let plus = Projector::new(side_basis(grid, n_per_side, 1.0)?)?;
    let minus = Projector::new(side_basis(grid, n_per_side, -1.0)?)?;
    let zero = Projector::new(vec![ExtendedVector::delta0(grid.clone()), ExtendedVector::w(grid.clone())])?;
    let rel = |x: &ExtendedVector, u: &ExtendedVector| -> Result<f64> { Ok(krein_norm(x, alpha)? / krein_norm(u, alpha)?) };

    let mut rep = MarkovReport {
        plus_minus: 0.0,
        minus_plus: 0.0,
        idempotence_plus: 0.0,
        idempotence_minus: 0.0,
        time_zero_fixed: 0.0,
    };
    for u in probes(grid)? {
        let pu = plus.apply(&u)?;
        let mu = minus.apply(&u)?;
        let zu = zero.apply(&u)?;
        rep.plus_minus = rep.plus_minus.max(rel(&plus.apply(&mu)?.sub(&zu)?, &u)?);
        rep.minus_plus = rep.minus_plus.max(rel(&minus.apply(&pu)?.sub(&zu)?, &u)?);
        rep.idempotence_plus = rep.idempotence_plus.max(rel(&plus.apply(&pu)?.sub(&pu)?, &u)?);
        rep.idempotence_minus = rep.idempotence_minus.max(rel(&minus.apply(&mu)?.sub(&mu)?, &u)?);
    }
    let v_probes = [
        ExtendedVector::delta0(grid.clone()),
        ExtendedVector::w(grid.clone()),
        ExtendedVector::u_alpha(grid.clone(), 0.7),
    ];
    for u in &v_probes {
        for e in [&plus, &minus] {
            rep.time_zero_fixed = rep.time_zero_fixed.max(rel(&e.apply(u)?.sub(u)?, u)?);
        }
    }
    Ok(rep)
}

/// `max` of the two commutation residuals at `α = 1`.
pub fn markov_projection_residual(grid: &std::sync::Arc<Grid>, n_per_side: usize) -> Result<f64> {
    Ok(markov_projection_report(grid, n_per_side, 1.0)?.max_commutation())
}

/// Largest `|Cov(x(τ), x(σ) | C)|` over `τ < 0 < σ`, where `C` is
/// `{x(0), v}` or just `{x(0)}`.
pub fn conditional_cross_covariance(taus: &[f64], alpha: f64, condition_on_v: bool) -> Result<f64> {
    check_alpha(alpha)?;
    if !taus.contains(&0.0) {
        return Err(Error::InvalidInput("conditioning needs τ = 0 among the times".into()));
    }
    let past: Vec<f64> = taus.iter().copied().filter(|t| *t < 0.0).collect();
    let future: Vec<f64> = taus.iter().copied().filter(|t| *t > 0.0).collect();
    if past.is_empty() || future.is_empty() {
        return Ok(0.0);
    }
    // variables: x(τ) for each listed time, and v
    #[derive(Clone, Copy)]
    enum Var {
        X(f64),
        V,
    }
    let var_v = alpha * alpha / 2.0;
    let cov = |a: Var, b: Var| match (a, b) {
        (Var::X(t), Var::X(s)) => krein_kernel(t, s, alpha),
        (Var::X(t), Var::V) | (Var::V, Var::X(t)) => -t.abs() * var_v,
        (Var::V, Var::V) => var_v,
    };
    let mut cond = vec![Var::X(0.0)];
    if condition_on_v {
        cond.push(Var::V);
    }
    let block = |rows: &[Var], cols: &[Var]| DMatrix::from_fn(rows.len(), cols.len(), |i, j| cov(rows[i], cols[j]));
    let p: Vec<Var> = past.iter().map(|&t| Var::X(t)).collect();
    let f: Vec<Var> = future.iter().map(|&t| Var::X(t)).collect();
    let cc = block(&cond, &cond);
    let svals = cc.clone().singular_values();
    let (mx, mn) = (svals.max(), svals.min());
    if !(mn > 0.0 && mx / mn <= CONDITION_THRESHOLD) {
        return Err(Error::Singular("conditioning covariance block".into()));
    }
    let inv = cc.try_inverse().ok_or_else(|| Error::Singular("conditioning covariance block".into()))?;
    let schur = block(&p, &f) - block(&p, &cond) * inv * block(&cond, &f);
    Ok(schur.iter().map(|x| x.abs()).fold(0.0, f64::max))
}

/// Conditional past/future cross-covariance given `(x(0), v)`.
pub fn conditional_independence_check(taus: &[f64], alpha: f64) -> Result<f64> {
    conditional_cross_covariance(taus, alpha, true)
}
