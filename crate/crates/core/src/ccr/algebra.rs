//! Polynomial algebra generated by `q, p` and the commutant pair `q', p'`.
//!
//! Elements are stored in the canonical normal order `q^j p^k q'^l p'^m`
//! with exact complex-rational coefficients. Multiplication reduces to
//! canonical form using `[q,p] = i`, `[q',p'] = -i`, and the vanishing of
//! every mixed primed/unprimed commutator.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, CRational};

/// Default bound on the length of words accepted by [`normal_order`].
pub const DEFAULT_WORD_BOUND: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Q,
    P,
    QPrime,
    PPrime,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::Q, Generator::P, Generator::QPrime, Generator::PPrime];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_primed(self) -> bool {
        matches!(self, Generator::QPrime | Generator::PPrime)
    }

    /// The c-number `[self, other]`.
    pub fn commutator(self, other: Generator) -> CRational {
        use Generator::*;
        match (self, other) {
            (Q, P) => CRational::i(),
            (P, Q) => -CRational::i(),
            (QPrime, PPrime) => -CRational::i(),
            (PPrime, QPrime) => CRational::i(),
            _ => CRational::zero(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::Q => "q",
            Generator::P => "p",
            Generator::QPrime => "q'",
            Generator::PPrime => "p'",
        })
    }
}

/// Exponents of the canonical monomial `q^q p^p q'^qp p'^pp`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub q: u32,
    pub p: u32,
    pub qp: u32,
    pub pp: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { q: 0, p: 0, qp: 0, pp: 0 };

    pub fn new(q: u32, p: u32, qp: u32, pp: u32) -> Self {
        Self { q, p, qp, pp }
    }

    pub fn generator(g: Generator) -> Self {
        let mut m = Self::ONE;
        *m.exponent_mut(g) = 1;
        m
    }

    pub fn exponent(&self, g: Generator) -> u32 {
        match g {
            Generator::Q => self.q,
            Generator::P => self.p,
            Generator::QPrime => self.qp,
            Generator::PPrime => self.pp,
        }
    }

    fn exponent_mut(&mut self, g: Generator) -> &mut u32 {
        match g {
            Generator::Q => &mut self.q,
            Generator::P => &mut self.p,
            Generator::QPrime => &mut self.qp,
            Generator::PPrime => &mut self.pp,
        }
    }

    pub fn degree(&self) -> u32 {
        self.q + self.p + self.qp + self.pp
    }

    pub fn has_primed(&self) -> bool {
        self.qp + self.pp > 0
    }

    /// Run-length form of the canonical word.
    pub fn blocks(&self) -> Vec<(Generator, u32)> {
        Generator::ALL
            .iter()
            .map(|&g| (g, self.exponent(g)))
            .filter(|&(_, n)| n > 0)
            .collect()
    }

    /// The canonical word `q…q p…p q'…q' p'…p'`.
    pub fn word(&self) -> Vec<Generator> {
        self.blocks()
            .into_iter()
            .flat_map(|(g, n)| std::iter::repeat_n(g, n as usize))
            .collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .blocks()
            .into_iter()
            .map(|(g, n)| if n == 1 { g.to_string() } else { format!("{g}^{n}") })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `r! C(k,r) C(a,r)`: the number of contractions of `r` pairs.
fn contraction_count(k: u32, a: u32, r: u32) -> BigInt {
    factorial(k) * factorial(a) / (factorial(k - r) * factorial(a - r) * factorial(r))
}

/// Reorders `y^k x^a` into `Σ_r coeff_r x^{a-r} y^{k-r}` where `[x, y] = z`.
/// Returns `(r, coeff_r)` pairs; `coeff_r = r! C(k,r) C(a,r) (-z)^r`.
fn reorder(k: u32, a: u32, z: &CRational) -> Vec<(u32, CRational)> {
    let minus_z = -z;
    (0..=k.min(a))
        .map(|r| {
            let count = CRational::real(BigRational::from_integer(contraction_count(k, a, r)));
            (r, &count * &minus_z.pow(r))
        })
        .collect()
}

/// Product of two canonical monomials, reduced to canonical form.
pub fn monomial_product(left: &Monomial, right: &Monomial) -> AlgebraElement {
    // Unprimed and primed sectors commute; each sector only needs its
    // middle factor `p^k q^a` moved into order.
    let unprimed = reorder(left.p, right.q, &CRational::i());
    let primed = reorder(left.pp, right.qp, &(-CRational::i()));
    let mut out = AlgebraElement::zero();
    for (r, cr) in &unprimed {
        for (s, cs) in &primed {
            let m = Monomial::new(
                left.q + right.q - r,
                left.p + right.p - r,
                left.qp + right.qp - s,
                left.pp + right.pp - s,
            );
            out.add_term(m, cr * cs);
        }
    }
    out
}

/// Exact linear combination of canonical monomials. No zero coefficients
/// are stored, so structural equality is algebraic equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, CRational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::ONE, CRational::one())
    }

    pub fn scalar(c: CRational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn generator(g: Generator) -> Self {
        Self::monomial(Monomial::generator(g), CRational::one())
    }

    pub fn q() -> Self {
        Self::generator(Generator::Q)
    }
    pub fn p() -> Self {
        Self::generator(Generator::P)
    }
    pub fn q_prime() -> Self {
        Self::generator(Generator::QPrime)
    }
    pub fn p_prime() -> Self {
        Self::generator(Generator::PPrime)
    }

    pub fn monomial(m: Monomial, c: CRational) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: CRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> CRational {
        self.terms.get(m).cloned().unwrap_or_else(CRational::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn has_primed(&self) -> bool {
        self.terms.keys().any(Monomial::has_primed)
    }

    pub fn scale(&self, c: &CRational) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Coefficientwise map of monomials to elements, extended linearly.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> AlgebraElement) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (m2, c2) in f(m).terms {
                out.add_term(m2, c * &c2);
            }
        }
        out
    }

    /// Antilinear involution: conjugates coefficients and reverses words.
    pub fn star(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            // (q^j p^k q'^l p'^m)* = (p^k q^j)(p'^m q'^l)
            let reversed = monomial_product(
                &Monomial::new(0, m.p, 0, m.pp),
                &Monomial::new(m.q, 0, m.qp, 0),
            );
            let cc = c.conj();
            for (m2, c2) in reversed.terms {
                out.add_term(m2, &cc * &c2);
            }
        }
        out
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }
}

/// Multiplies a word of generators out into canonical form.
pub fn normal_order(word: &[Generator]) -> Result<AlgebraElement> {
    normal_order_bounded(word, DEFAULT_WORD_BOUND)
}

pub fn normal_order_bounded(word: &[Generator], bound: usize) -> Result<AlgebraElement> {
    if word.len() > bound {
        return Err(Error::ResourceLimit {
            len: word.len(),
            bound,
        });
    }
    Ok(word
        .iter()
        .fold(AlgebraElement::one(), |acc, &g| &acc * &AlgebraElement::generator(g)))
}

impl<'a> Mul<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, o: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let c = c1 * c2;
                for (m, c3) in monomial_product(m1, m2).terms {
                    out.add_term(m, &c * &c3);
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, o: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, o: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&-CRational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, o: AlgebraElement) -> AlgebraElement {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<Generator> for AlgebraElement {
    fn from(g: Generator) -> Self {
        Self::generator(g)
    }
}

impl From<CRational> for AlgebraElement {
    fn from(c: CRational) -> Self {
        Self::scalar(c)
    }
}

fn fmt_coefficient(c: &CRational) -> (bool, String) {
    // Returns (negative, magnitude text) so terms can be joined with +/-.
    if c.is_real() {
        (c.re.is_negative(), format_rational(&c.re.abs()))
    } else if c.re.is_zero() {
        let im = format_rational(&c.im.abs());
        let text = if im == "1" { "i".to_string() } else { format!("{im} i") };
        (c.im.is_negative(), text)
    } else {
        (false, format!("({c})"))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let (negative, mag) = fmt_coefficient(c);
            let body = match (mag.as_str(), *m == Monomial::ONE) {
                (_, true) => mag.clone(),
                ("1", false) => m.to_string(),
                _ => format!("{mag} {m}"),
            };
            match (n, negative) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use Generator::*;

    fn mono(q: u32, p: u32, qp: u32, pp: u32) -> Monomial {
        Monomial::new(q, p, qp, pp)
    }

    #[test]
    fn ordered_word_is_unchanged() {
        let e = normal_order(&[Q, P]).unwrap();
        assert_eq!(e, AlgebraElement::monomial(mono(1, 1, 0, 0), CRational::one()));
    }

    #[test]
    fn pq_reorders_with_minus_i() {
        let e = normal_order(&[P, Q]).unwrap();
        let mut want = AlgebraElement::monomial(mono(1, 1, 0, 0), CRational::one());
        want.add_term(Monomial::ONE, -CRational::i());
        assert_eq!(e, want);
    }

    #[test]
    fn mixed_word_p_pprime_q() {
        // p p' q = q p p' - i p'
        let e = normal_order(&[P, PPrime, Q]).unwrap();
        let mut want = AlgebraElement::monomial(mono(1, 1, 0, 1), CRational::one());
        want.add_term(mono(0, 0, 0, 1), -CRational::i());
        assert_eq!(e, want);
    }

    #[test]
    fn primed_commutator_is_minus_i() {
        let c = AlgebraElement::q_prime().commutator(&AlgebraElement::p_prime());
        assert_eq!(c, AlgebraElement::scalar(-CRational::i()));
        let mixed = AlgebraElement::q().commutator(&AlgebraElement::p_prime());
        assert!(mixed.is_zero());
    }

    #[test]
    fn word_bound_is_enforced() {
        let word = vec![Q; 33];
        assert!(matches!(
            normal_order(&word),
            Err(Error::ResourceLimit { len: 33, bound: 32 })
        ));
        assert!(normal_order_bounded(&word, 40).is_ok());
    }

    #[test]
    fn star_examples() {
        assert_eq!(AlgebraElement::q().star(), AlgebraElement::q());
        let i = CRational::i();
        let qi_p = &AlgebraElement::q() + &AlgebraElement::p().scale(&i);
        let want = &AlgebraElement::q() - &AlgebraElement::p().scale(&i);
        assert_eq!(qi_p.star(), want);
        // (i qp)* = -i qp - 1
        let iqp = AlgebraElement::monomial(mono(1, 1, 0, 0), i.clone());
        let mut want = AlgebraElement::monomial(mono(1, 1, 0, 0), -i);
        want.add_term(Monomial::ONE, -CRational::one());
        assert_eq!(iqp.star(), want);
    }

    #[test]
    fn star_is_involutive_and_antimultiplicative() {
        let a = normal_order(&[P, Q, QPrime, P, PPrime]).unwrap().scale(&CRational::new(rat(2, 3), rat(-1, 5)));
        let b = normal_order(&[PPrime, Q, Q]).unwrap();
        assert_eq!(a.star().star(), a);
        assert_eq!((&a * &b).star(), &b.star() * &a.star());
    }

    #[test]
    fn display_is_readable() {
        let e = normal_order(&[P, PPrime, Q]).unwrap();
        assert_eq!(e.to_string(), "-i p' + q p p'");
        assert_eq!(AlgebraElement::zero().to_string(), "0");
    }

    #[test]
    fn product_is_associative_on_samples() {
        let words: [&[Generator]; 4] = [&[P, P, Q], &[Q, PPrime, QPrime], &[PPrime, PPrime, QPrime], &[P, QPrime, Q, Q]];
        let els: Vec<_> = words.iter().map(|w| normal_order(w).unwrap()).collect();
        for a in &els {
            for b in &els {
                for c in &els {
                    assert_eq!(&(a * b) * c, a * &(b * c));
                }
            }
        }
    }
}
