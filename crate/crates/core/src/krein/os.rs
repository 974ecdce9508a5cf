//! Osterwalder–Schrader product on positive-time functions and the
//! `D = −d²/dτ²` duality.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::{inner_extended, ExtendedVector, ZERO};
use crate::error::{Error, Result};
use crate::gram::GramMatrix;

/// `⟨θf, g⟩_OS` computed three ways.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OsInner {
    /// Double quadrature of the reflected kernel `c − (τ+σ)/2`.
    pub reflected: Complex64,
    /// `i/2 (f̃′(0)̄ g̃(0) − f̃(0)̄ g̃′(0)) + c f̃(0)̄ g̃(0)` with
    /// `f̃(0) = ∫f`, `f̃′(0) = −i∫τf`.
    pub closed_form: Complex64,
    /// `⟨E0f, E0g⟩ + c f̃(0)̄ g̃(0)` with `E0f = f̃(0)δ0 + i f̃′(0)w`.
    pub via_e0: Complex64,
}

impl OsInner {
    pub fn value(&self) -> Complex64 {
        self.reflected
    }

    pub fn max_disagreement(&self) -> f64 {
        let a = (self.reflected - self.closed_form).norm();
        let b = (self.reflected - self.via_e0).norm();
        let c = (self.closed_form - self.via_e0).norm();
        a.max(b).max(c)
    }
}

fn check_positive_support(f: &ExtendedVector) -> Result<()> {
    if !f.is_function() {
        return Err(Error::SupportViolation("OS product takes plain grid functions".into()));
    }
    if let Some((t, _)) = f.grid().taus().iter().zip(&f.h).find(|(t, x)| **t < 0.0 && x.norm() != 0.0) {
        return Err(Error::SupportViolation(format!("function is nonzero at τ = {t} < 0")));
    }
    Ok(())
}

/// `(∫f, ∫τf)`.
fn moments(f: &ExtendedVector) -> (Complex64, Complex64) {
    let s = f.grid().step();
    let m0 = f.h.iter().sum::<Complex64>() * s;
    let m1 = f.h.iter().zip(f.grid().taus()).map(|(x, t)| x * t).sum::<Complex64>() * s;
    (m0, m1)
}

pub fn os_inner(f: &ExtendedVector, g: &ExtendedVector, c: f64) -> Result<OsInner> {
    check_positive_support(f)?;
    check_positive_support(g)?;
    if f.grid() != g.grid() {
        return Err(Error::GridMismatch("vectors live on different grids".into()));
    }
    let (f0, f1) = moments(f);
    let (g0, g1) = moments(g);
    let s = f.grid().step();
    let taus = f.grid().taus();
    let mut reflected = ZERO;
    for (x, t) in f.h.iter().zip(taus) {
        if x.norm() == 0.0 {
            continue;
        }
        let row: Complex64 = g.h.iter().zip(taus).map(|(y, u)| y * (c - (t + u) / 2.0)).sum();
        reflected += x.conj() * row;
    }
    reflected *= s * s;

    let i = Complex64::i();
    let (fd, gd) = (-i * f1, -i * g1);
    let c_term = c * f0.conj() * g0;
    let closed_form = 0.5 * i * (fd.conj() * g0 - f0.conj() * gd) + c_term;

    let e0 = |m0: Complex64, d: Complex64| {
        let mut v = ExtendedVector::zero(f.grid().clone());
        v.a = m0;
        v.b = i * d;
        v
    };
    let via_e0 = inner_extended(&e0(f0, fd), &e0(g0, gd))? + c_term;
    Ok(OsInner {
        reflected,
        closed_form,
        via_e0,
    })
}

/// Gram matrix of a positive-time family under the OS product.
pub fn os_gram(family: &[ExtendedVector], c: f64) -> Result<GramMatrix> {
    let n = family.len();
    let mut m = DMatrix::from_element(n, n, ZERO);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = os_inner(&family[i], &family[j], c)?.reflected;
        }
    }
    Ok(GramMatrix::new(m))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DualityReport {
    /// `|⟨f, Dg⟩ − (f, g)_{L²}|`.
    pub residual: f64,
    /// `max |Dθg − θDg|`, or `None` on an asymmetric grid.
    pub theta_commutator: Option<f64>,
    /// For `g` vanishing on `τ ≤ 0`: whether `Dg` vanishes on `τ < 0`.
    pub support_preserved: Option<bool>,
    /// `g` vanishes on the two outermost points at each end, so the
    /// integration by parts has no boundary terms.
    pub in_domain: bool,
}

/// Second central difference `−(g_{k+1} − 2g_k + g_{k−1})/step²`, zero at
/// the two boundary points.
pub fn minus_laplacian(g: &ExtendedVector) -> ExtendedVector {
    let n = g.h.len();
    let s2 = g.grid().step().powi(2);
    let mut out = ExtendedVector::zero(g.grid().clone());
    for k in 1..n.saturating_sub(1) {
        out.h[k] = -(g.h[k + 1] - 2.0 * g.h[k] + g.h[k - 1]) / s2;
    }
    out
}

pub fn duality_check(f: &ExtendedVector, g: &ExtendedVector) -> Result<DualityReport> {
    if !f.is_function() || !g.is_function() {
        return Err(Error::InvalidInput("duality check takes plain grid functions".into()));
    }
    let dg = minus_laplacian(g);
    let lhs = inner_extended(f, &dg)?;
    let l2: Complex64 = f.h.iter().zip(&g.h).map(|(x, y)| x.conj() * y).sum::<Complex64>() * f.grid().step();
    let residual = (lhs - l2).norm();

    let theta_commutator = if f.grid().is_symmetric() {
        let a = minus_laplacian(&g.theta()?);
        let b = dg.theta()?;
        Some(a.h.iter().zip(&b.h).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max))
    } else {
        None
    };

    let taus = g.grid().taus();
    let positive = taus.iter().zip(&g.h).all(|(t, x)| *t > 0.0 || x.norm() == 0.0);
    let support_preserved =
        positive.then(|| taus.iter().zip(&dg.h).all(|(t, x)| *t >= 0.0 || x.norm() == 0.0));

    let scale = g.h.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let n = g.h.len();
    let edge = [0, 1, n.saturating_sub(2), n.saturating_sub(1)];
    let in_domain = n >= 4 && edge.iter().all(|&k| g.h[k].norm() <= 1e-12 * scale.max(f64::MIN_POSITIVE));
    Ok(DualityReport {
        residual,
        theta_commutator,
        support_preserved,
        in_domain,
    })
}
