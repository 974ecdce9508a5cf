//! Automorphisms of the extended algebra: free time evolution, the
//! scale transformation, and the Krein metric conjugation `η · η`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebra::{monomial_product, AlgebraElement, Monomial};
use crate::error::{Error, Result};
use crate::scalar::CRational;

/// Substitutes linear images for each generator and multiplies out.
fn substitute(e: &AlgebraElement, images: &[AlgebraElement; 4]) -> AlgebraElement {
    let max = e.terms().map(|(m, _)| m.degree()).max().unwrap_or(0) as usize;
    let powers: Vec<Vec<AlgebraElement>> = images
        .iter()
        .map(|img| {
            let mut v = vec![AlgebraElement::one()];
            for k in 1..=max {
                let next = &v[k - 1] * img;
                v.push(next);
            }
            v
        })
        .collect();
    e.map_monomials(|m| {
        let f = |g: usize, n: u32| &powers[g][n as usize];
        &(&(f(0, m.q) * f(1, m.p)) * f(2, m.qp)) * f(3, m.pp)
    })
}

/// Free evolution: `q ↦ q + t p`, `p ↦ p`, `q' ↦ q' - t p'`, `p' ↦ p'`.
///
/// The primed action is the Heisenberg flow of `H = (p² + p'²)/2`, which
/// keeps ω invariant on the whole extended algebra.
pub fn evolve(e: &AlgebraElement, t: &BigRational) -> AlgebraElement {
    if t.is_zero() {
        return e.clone();
    }
    let tc = CRational::real(t.clone());
    let images = [
        &AlgebraElement::q() + &AlgebraElement::p().scale(&tc),
        AlgebraElement::p(),
        &AlgebraElement::q_prime() - &AlgebraElement::p_prime().scale(&tc),
        AlgebraElement::p_prime(),
    ];
    substitute(e, &images)
}

/// Multiplicative linear involution `q ↔ p'`, `p ↔ q'`.
pub fn eta_conjugate(e: &AlgebraElement) -> AlgebraElement {
    e.map_monomials(|m| {
        // q^j p^k q'^l p'^m ↦ p'^j q'^k p^l q^m = (p^l q^m)(p'^j q'^k)
        monomial_product(&Monomial::new(0, m.qp, 0, m.q), &Monomial::new(m.pp, 0, m.p, 0))
    })
}

/// `q ↦ λq`, `p ↦ λ⁻¹p`, and likewise `q' ↦ λq'`, `p' ↦ λ⁻¹p'`.
pub fn scale_transform(e: &AlgebraElement, lambda: &BigRational) -> Result<AlgebraElement> {
    if lambda.is_zero() {
        return Err(Error::InvalidInput("scale factor must be nonzero".into()));
    }
    let inv = BigRational::one() / lambda;
    let mut out = AlgebraElement::zero();
    for (m, c) in e.terms() {
        let up = lambda.pow((m.q + m.qp) as i32);
        let down = inv.pow((m.p + m.pp) as i32);
        out.add_term(*m, c * &CRational::real(up * down));
    }
    Ok(out)
}
