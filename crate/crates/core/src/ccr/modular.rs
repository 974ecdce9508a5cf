//! Tomita–Takesaki maps on GNS labels of the unprimed subalgebra, and the
//! Fock / anti-Fock operators built from `q, p, q', p'`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebra::{monomial_product, AlgebraElement, Monomial};
use super::state::GnsVector;
use crate::error::{Error, Result};
use crate::scalar::{rat, CRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModularMap {
    /// `Δ^{1/2}`: `p^k q^j Ψ₀ ↦ i^k (-i)^j p^k q^j Ψ₀`.
    SqrtDelta,
    /// `Δ^{-1/2}`: the same with `i ↔ -i`.
    InvSqrtDelta,
    /// `J = S Δ^{-1/2}`.
    Conjugation,
}

fn binom(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, r| acc * BigInt::from(n - r) / BigInt::from(r + 1))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Coefficients in the `p^k q^j` basis, keyed by `(k, j)`.
fn to_p_first(e: &AlgebraElement) -> BTreeMap<(u32, u32), CRational> {
    let mut out: BTreeMap<(u32, u32), CRational> = BTreeMap::new();
    for (m, c) in e.terms() {
        // q^j p^k = Σ_r r! C(j,r) C(k,r) i^r p^{k-r} q^{j-r}
        for r in 0..=m.q.min(m.p) {
            let n = factorial(r) * binom(m.q, r) * binom(m.p, r);
            let coeff = &(c * &CRational::i_pow(r as i64)) * &CRational::real(BigRational::from_integer(n));
            let slot = out.entry((m.p - r, m.q - r)).or_insert_with(CRational::zero);
            *slot += &coeff;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn from_p_first(basis: &BTreeMap<(u32, u32), CRational>) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (&(k, j), c) in basis {
        let canon = monomial_product(&Monomial::new(0, k, 0, 0), &Monomial::new(j, 0, 0, 0));
        for (m, c2) in canon.terms() {
            out.add_term(*m, c * c2);
        }
    }
    out
}

fn sqrt_delta(e: &AlgebraElement, sign: i64) -> AlgebraElement {
    let mut basis = to_p_first(e);
    for (&(k, j), c) in basis.iter_mut() {
        // i^k (-i)^j = i^{k-j}; the inverse flips the sign.
        *c = &*c * &CRational::i_pow(sign * (k as i64 - j as i64));
    }
    from_p_first(&basis)
}

/// Applies `Δ^{±1/2}` or `J` to a vector whose label lies in the
/// unprimed subalgebra.
pub fn modular_apply(kind: ModularMap, v: &GnsVector) -> Result<GnsVector> {
    if v.0.has_primed() {
        return Err(Error::UnsupportedDomain(
            "modular maps are defined on labels in q, p only".into(),
        ));
    }
    let out = match kind {
        ModularMap::SqrtDelta => sqrt_delta(&v.0, 1),
        ModularMap::InvSqrtDelta => sqrt_delta(&v.0, -1),
        ModularMap::Conjugation => sqrt_delta(&v.0, -1).star(),
    };
    Ok(GnsVector(out))
}

/// The Tomita operator `S: AΨ₀ ↦ A*Ψ₀`.
pub fn tomita(v: &GnsVector) -> GnsVector {
    GnsVector(v.0.star())
}

fn lin(q: CRational, p: CRational, qp: CRational, pp: CRational) -> AlgebraElement {
    let mut e = AlgebraElement::zero();
    e.add_term(Monomial::new(1, 0, 0, 0), q);
    e.add_term(Monomial::new(0, 1, 0, 0), p);
    e.add_term(Monomial::new(0, 0, 1, 0), qp);
    e.add_term(Monomial::new(0, 0, 0, 1), pp);
    e
}

fn r(n: i64, d: i64) -> CRational {
    CRational::real(rat(n, d))
}

fn ri(n: i64, d: i64) -> CRational {
    CRational::new(BigRational::zero(), rat(n, d))
}

/// `√2 Q± = q ± p'`. The `√2` is kept out so coefficients stay rational.
pub fn q_pm_scaled(plus: bool) -> AlgebraElement {
    let s = if plus { 1 } else { -1 };
    lin(r(1, 1), r(0, 1), r(0, 1), r(s, 1))
}

/// `√2 P± = ±p + q'`.
pub fn p_pm_scaled(plus: bool) -> AlgebraElement {
    let s = if plus { 1 } else { -1 };
    lin(r(0, 1), r(s, 1), r(1, 1), r(0, 1))
}

/// `a = (Q₊ + iP₊)/√2 = (q + ip + iq' + p')/2`.
pub fn fock_a() -> AlgebraElement {
    lin(r(1, 2), ri(1, 2), ri(1, 2), r(1, 2))
}

/// `b* = (Q₋ + iP₋)/√2 = (q - ip + iq' - p')/2`.
pub fn anti_fock_b_star() -> AlgebraElement {
    lin(r(1, 2), ri(-1, 2), ri(1, 2), r(-1, 2))
}

pub fn fock_a_star() -> AlgebraElement {
    fock_a().star()
}

pub fn anti_fock_b() -> AlgebraElement {
    anti_fock_b_star().star()
}

/// `H = (p² + p'²)/2`.
pub fn hamiltonian() -> AlgebraElement {
    let mut h = AlgebraElement::zero();
    h.add_term(Monomial::new(0, 2, 0, 0), r(1, 2));
    h.add_term(Monomial::new(0, 0, 0, 2), r(1, 2));
    h
}
