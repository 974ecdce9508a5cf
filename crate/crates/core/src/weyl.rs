//! Weyl algebra with the non-regular, time-invariant ground state Ω.
//!
//! Symbols `W(α, β)` carry exact rational labels. The product is
//! `W(α,β) W(γ,δ) = e^{i(βγ − αδ)/2} W(α+γ, β+δ)`, evolution is
//! `α_t W(α,β) = W(α, β + αt)`, and `Ω(W(α,β))` is `1` for `α = 0` and `0`
//! otherwise.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{rational_from_f64, rational_to_f64};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylSymbol {
    pub alpha: BigRational,
    pub beta: BigRational,
}

impl WeylSymbol {
    pub fn new(alpha: BigRational, beta: BigRational) -> Self {
        Self { alpha, beta }
    }

    pub fn from_f64(alpha: f64, beta: f64) -> Result<Self> {
        Ok(Self::new(rational_from_f64(alpha)?, rational_from_f64(beta)?))
    }

    pub fn unit() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn star(&self) -> Self {
        Self::new(-self.alpha.clone(), -self.beta.clone())
    }

    /// `(φ, W)` with `self · other = e^{iφ} W`; the phase exponent is exact.
    pub fn product(&self, other: &Self) -> (BigRational, WeylSymbol) {
        let phase = (&self.beta * &other.alpha - &self.alpha * &other.beta) / BigRational::from_integer(2.into());
        (
            phase,
            WeylSymbol::new(&self.alpha + &other.alpha, &self.beta + &other.beta),
        )
    }

    pub fn evolve(&self, t: &BigRational) -> Self {
        Self::new(self.alpha.clone(), &self.beta + &self.alpha * t)
    }
}

fn phase(exponent: &BigRational) -> Complex64 {
    Complex64::from_polar(1.0, rational_to_f64(exponent))
}

/// Finite complex combination of Weyl symbols.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WeylElement {
    terms: BTreeMap<WeylSymbol, Complex64>,
}

impl WeylElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self::symbol(WeylSymbol::unit())
    }

    pub fn symbol(s: WeylSymbol) -> Self {
        let mut e = Self::zero();
        e.add_term(s, Complex64::new(1.0, 0.0));
        e
    }

    /// `W(α, β)` from exact labels.
    pub fn w(alpha: BigRational, beta: BigRational) -> Self {
        Self::symbol(WeylSymbol::new(alpha, beta))
    }

    pub fn add_term(&mut self, s: WeylSymbol, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let slot = self.terms.entry(s).or_insert(Complex64::new(0.0, 0.0));
        *slot += c;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylSymbol, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: &WeylSymbol) -> Complex64 {
        self.terms.get(s).copied().unwrap_or_default()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            terms: self.terms.iter().map(|(s, v)| (s.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), *c);
        }
        out
    }

    /// Antilinear involution `W(α,β)* = W(−α,−β)`.
    pub fn star(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(s, v)| (s.star(), v.conj())).collect(),
        }
    }

    /// Largest coefficient distance to `other`, over the union of supports.
    pub fn distance(&self, other: &Self) -> f64 {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .map(|s| (self.coefficient(s) - other.coefficient(s)).norm())
            .fold(0.0, f64::max)
    }
}

pub fn weyl_product(u: &WeylElement, v: &WeylElement) -> WeylElement {
    let mut out = WeylElement::zero();
    for (s1, c1) in &u.terms {
        for (s2, c2) in &v.terms {
            let (ph, s) = s1.product(s2);
            out.add_term(s, c1 * c2 * phase(&ph));
        }
    }
    out
}

pub fn evolve_weyl(u: &WeylElement, t: &BigRational) -> WeylElement {
    let mut out = WeylElement::zero();
    for (s, c) in &u.terms {
        out.add_term(s.evolve(t), *c);
    }
    out
}

/// `Ω` extended linearly.
pub fn omega_expectation(u: &WeylElement) -> Complex64 {
    u.terms
        .iter()
        .filter(|(s, _)| s.alpha.is_zero())
        .map(|(_, c)| *c)
        .sum()
}

fn check_lengths(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::LengthMismatch { left: a, right: b });
    }
    if a == 0 {
        return Err(Error::InvalidInput("n-point functions need n >= 1".into()));
    }
    Ok(())
}

fn rational_labels(alphas: &[f64]) -> Result<Vec<BigRational>> {
    alphas.iter().map(|&a| rational_from_f64(a)).collect()
}

/// Exact test of `Σα = 0` after snapping the labels to rationals.
pub fn total_charge_vanishes(alphas: &[f64]) -> Result<bool> {
    Ok(rational_labels(alphas)?.iter().sum::<BigRational>().is_zero())
}

/// `Σ_{i≥2} (t_i − t_{i−1}) (Σ_{k≥i} α_k)²` for exact charges and
/// complex times, or `None` when the total charge is nonzero.
fn charge_weighted_increments(alphas: &[BigRational], times: &[Complex64]) -> Option<Complex64> {
    let total: BigRational = alphas.iter().sum();
    if !total.is_zero() {
        return None;
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut tail = BigRational::zero();
    for i in (1..alphas.len()).rev() {
        tail += &alphas[i];
        let t2 = rational_to_f64(&(&tail * &tail));
        acc += (times[i] - times[i - 1]) * t2;
    }
    Some(acc)
}

/// Wightman function `Ω(U(α₁,t₁)…U(αₙ,tₙ))` at complex times; `0` unless
/// `Σα = 0` exactly.
pub fn wightman_npoint_complex(alphas: &[f64], times: &[Complex64]) -> Result<Complex64> {
    check_lengths(alphas.len(), times.len())?;
    let labels = rational_labels(alphas)?;
    Ok(match charge_weighted_increments(&labels, times) {
        None => Complex64::new(0.0, 0.0),
        Some(s) => (Complex64::new(0.0, 0.5) * s).exp(),
    })
}

pub fn wightman_npoint(alphas: &[f64], times: &[f64]) -> Result<Complex64> {
    let ts: Vec<Complex64> = times.iter().map(|&t| Complex64::new(t, 0.0)).collect();
    wightman_npoint_complex(alphas, &ts)
}

/// Euclidean Schwinger function; times are sorted (carrying their charges)
/// before applying the ordered formula, so the result is symmetric.
pub fn schwinger_npoint(alphas: &[f64], taus: &[f64]) -> Result<f64> {
    check_lengths(alphas.len(), taus.len())?;
    let labels = rational_labels(alphas)?;
    let mut order: Vec<usize> = (0..taus.len()).collect();
    order.sort_by(|&a, &b| taus[a].partial_cmp(&taus[b]).expect("finite times"));
    let sorted_labels: Vec<BigRational> = order.iter().map(|&k| labels[k].clone()).collect();
    let sorted_times: Vec<Complex64> = order.iter().map(|&k| Complex64::new(taus[k], 0.0)).collect();
    Ok(match charge_weighted_increments(&sorted_labels, &sorted_times) {
        None => 0.0,
        Some(s) => (-0.5 * s.re).exp(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralLine {
    pub frequency: f64,
    pub coefficient: Complex64,
}

/// Fourier decomposition of `t ↦ Ω(W(α,β) α_t(W(γ,δ)))`.
///
/// The product is `e^{i(βγ − α(δ+γt))/2} W(α+γ, …)`, so the only line sits
/// at `ν = −αγ/2` and survives only when `α + γ = 0`, giving `ν = α²/2`.
pub fn spectral_support(alpha: &BigRational, beta: &BigRational, gamma: &BigRational, delta: &BigRational) -> Vec<SpectralLine> {
    if !(alpha + gamma).is_zero() {
        return Vec::new();
    }
    let two = BigRational::from_integer(2.into());
    let freq = -(alpha * gamma) / &two;
    debug_assert!(!freq.is_negative());
    let exponent = (beta * gamma - alpha * delta) / &two;
    vec![SpectralLine {
        frequency: rational_to_f64(&freq),
        coefficient: phase(&exponent),
    }]
}

/// Reflection-positivity matrix `M_ij = S(θ(W_i)* W_j)` for charges `α_i` at
/// times `τ_i ≥ 0`: the reflected adjoint carries `−α_i` at `−τ_i`.
pub fn os_positivity_matrix(family: &[(f64, f64)]) -> Result<nalgebra::DMatrix<f64>> {
    if let Some(&(_, t)) = family.iter().find(|(_, t)| *t < 0.0) {
        return Err(Error::SupportViolation(format!("time {t} is negative")));
    }
    let n = family.len();
    let mut m = nalgebra::DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let (ai, ti) = family[i];
            let (aj, tj) = family[j];
            m[(i, j)] = schwinger_npoint(&[-ai, aj], &[-ti, tj])?;
        }
    }
    Ok(m)
}

/// One factor `U(α)` at time `τ` of an n-point request.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChargeAtTime(pub f64, pub f64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NPointKind {
    Wightman,
    Schwinger,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NPointRequest {
    pub kind: NPointKind,
    pub points: Vec<ChargeAtTime>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NPointResponse {
    pub exact_zero: bool,
    pub re: f64,
    pub im: f64,
}

pub fn evaluate_npoint(req: &NPointRequest) -> Result<NPointResponse> {
    let alphas: Vec<f64> = req.points.iter().map(|p| p.0).collect();
    let times: Vec<f64> = req.points.iter().map(|p| p.1).collect();
    let exact_zero = !total_charge_vanishes(&alphas)?;
    let value = match req.kind {
        NPointKind::Wightman => wightman_npoint(&alphas, &times)?,
        NPointKind::Schwinger => Complex64::new(schwinger_npoint(&alphas, &times)?, 0.0),
    };
    Ok(NPointResponse {
        exact_zero,
        re: value.re,
        im: value.im,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn w(a: i64, b: i64) -> WeylElement {
        WeylElement::w(rat(a, 1), rat(b, 1))
    }

    #[test]
    fn split_product_phase() {
        // W(α,0) W(0,β) = e^{−iαβ/2} W(α,β)
        let (a, b) = (rat(3, 2), rat(5, 3));
        let got = weyl_product(&WeylElement::w(a.clone(), rat(0, 1)), &WeylElement::w(rat(0, 1), b.clone()));
        let want = WeylElement::w(a.clone(), b.clone()).scale(phase(&(-(&a * &b) / rat(2, 1))));
        assert!(got.distance(&want) < 1e-15);
    }

    #[test]
    fn inverse_symbol_gives_unit() {
        let got = weyl_product(&w(2, -7), &w(-2, 7));
        assert!(got.distance(&WeylElement::unit()) < 1e-15);
    }

    #[test]
    fn expectation_values() {
        assert_eq!(omega_expectation(&WeylElement::symbol(WeylSymbol::from_f64(1.0, 7.3).unwrap())), Complex64::new(0.0, 0.0));
        assert_eq!(omega_expectation(&w(0, 5)), Complex64::new(1.0, 0.0));
        let prod = weyl_product(&w(1, 0), &w(-1, 0));
        assert!((omega_expectation(&prod) - 1.0).norm() < 1e-15);
    }

    #[test]
    fn evolution_examples() {
        assert_eq!(evolve_weyl(&w(1, 0), &rat(2, 1)), w(1, 2));
        assert_eq!(evolve_weyl(&w(0, 4), &rat(9, 1)), w(0, 4));
    }

    #[test]
    fn evolved_two_point_matches_closed_form() {
        let (a, b, d, t) = (rat(3, 2), rat(1, 3), rat(-2, 5), rat(7, 4));
        let lhs = omega_expectation(&weyl_product(
            &WeylElement::w(a.clone(), b.clone()),
            &evolve_weyl(&WeylElement::w(-a.clone(), d.clone()), &t),
        ));
        let x = rational_to_f64(&a);
        let rhs = Complex64::from_polar(1.0, -x * rational_to_f64(&(&d + &b)) / 2.0 + x * x * rational_to_f64(&t) / 2.0);
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn wightman_examples() {
        let t = 1.7;
        let v = wightman_npoint(&[1.0, -1.0], &[0.0, t]).unwrap();
        assert!((v - Complex64::from_polar(1.0, t / 2.0)).norm() < 1e-15);
        assert_eq!(wightman_npoint(&[1.0, 1.0], &[0.0, 1.0]).unwrap(), Complex64::new(0.0, 0.0));
        let v = wightman_npoint(&[1.0, 1.0, -2.0], &[0.0, 1.0, 2.0]).unwrap();
        assert!((v - Complex64::from_polar(1.0, 2.5)).norm() < 1e-15);
        assert!(matches!(wightman_npoint(&[1.0], &[0.0, 1.0]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn schwinger_examples() {
        let e = (-0.5f64).exp();
        assert!((schwinger_npoint(&[1.0, -1.0], &[0.0, 1.0]).unwrap() - e).abs() < 1e-15);
        assert!((schwinger_npoint(&[1.0, -1.0], &[1.0, 0.0]).unwrap() - e).abs() < 1e-15);
        assert_eq!(schwinger_npoint(&[1.0, 1.0], &[0.3, 2.0]).unwrap(), 0.0);
        // exact charge test survives binary rounding of the labels
        assert!(schwinger_npoint(&[0.1, 0.2, -0.3], &[0.0, 1.0, 2.0]).unwrap() > 0.0);
    }

    #[test]
    fn spectral_examples() {
        let lines = spectral_support(&rat(1, 1), &rat(0, 1), &rat(-1, 1), &rat(0, 1));
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].frequency, 0.5);
        assert!((lines[0].coefficient - 1.0).norm() < 1e-15);
        assert!(spectral_support(&rat(1, 1), &rat(0, 1), &rat(1, 1), &rat(0, 1)).is_empty());
        let abelian = spectral_support(&rat(0, 1), &rat(3, 1), &rat(0, 1), &rat(-2, 1));
        assert_eq!(abelian, vec![SpectralLine { frequency: 0.0, coefficient: Complex64::new(1.0, 0.0) }]);
    }

    #[test]
    fn os_matrix_is_block_rank_one() {
        let fam = [(1.0, 0.0), (1.0, 0.5), (-1.0, 0.2), (2.0, 1.0)];
        let m = os_positivity_matrix(&fam).unwrap();
        assert!((m[(0, 1)] - (-0.25f64).exp()).abs() < 1e-15);
        assert_eq!(m[(0, 2)], 0.0);
        assert!(os_positivity_matrix(&[(1.0, -0.1)]).is_err());
    }

    #[test]
    fn npoint_json_roundtrip() {
        let req: NPointRequest = serde_json::from_str(r#"{"kind":"schwinger","points":[[1,0],[-1,1]]}"#).unwrap();
        let out = evaluate_npoint(&req).unwrap();
        assert!(!out.exact_zero);
        assert!((out.re - (-0.5f64).exp()).abs() < 1e-15);
        let req: NPointRequest = serde_json::from_str(r#"{"kind":"wightman","points":[[1,0],[1,1]]}"#).unwrap();
        assert!(evaluate_npoint(&req).unwrap().exact_zero);
        assert!(serde_json::from_str::<NPointRequest>(r#"{"kind":"wightman","points":[],"x":1}"#).is_err());
    }
}
