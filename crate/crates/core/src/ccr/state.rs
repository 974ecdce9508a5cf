//! The Gaussian functional ω on the extended Heisenberg algebra and the
//! indefinite GNS inner product it induces.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebra::{AlgebraElement, Generator, Monomial};
use crate::scalar::{rat, CRational};

/// Ordered two-point values `ω(xy)` for all generator pairs.
///
/// The unprimed block is `ω(q²)=c, ω(p²)=0, ω(qp)=-ω(pq)=i/2`; the primed
/// block mirrors it with `ω(q'p') = -i/2`. The mixed entries are the ones
/// forced at `c = 0` by `(q + iq')Ψ₀ = 0` and `(p - ip')Ψ₀ = 0`:
/// `ω(qq') = ω(pp') = 0`, `ω(qp') = ω(pq') = 1/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceTable {
    c: BigRational,
    table: [[CRational; 4]; 4],
}

impl CovarianceTable {
    pub fn new(c: BigRational) -> Self {
        use Generator::*;
        let half = CRational::real(rat(1, 2));
        let half_i = CRational::new(rat(0, 1), rat(1, 2));
        let cc = CRational::real(c.clone());
        let zero = CRational::zero();
        let mut table: [[CRational; 4]; 4] = Default::default();
        let mut set = |x: Generator, y: Generator, v: CRational| table[x.index()][y.index()] = v;
        set(Q, Q, cc.clone());
        set(P, P, zero.clone());
        set(Q, P, half_i.clone());
        set(P, Q, -&half_i);
        set(QPrime, QPrime, cc);
        set(PPrime, PPrime, zero.clone());
        set(QPrime, PPrime, -&half_i);
        set(PPrime, QPrime, half_i);
        for (x, y) in [(Q, QPrime), (P, PPrime)] {
            set(x, y, zero.clone());
            set(y, x, zero.clone());
        }
        for (x, y) in [(Q, PPrime), (P, QPrime)] {
            set(x, y, half.clone());
            set(y, x, half.clone());
        }
        Self { c, table }
    }

    /// The scale- and time-invariant table with `c = 0`.
    pub fn standard() -> Self {
        Self::new(BigRational::zero())
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn two_point(&self, x: Generator, y: Generator) -> &CRational {
        &self.table[x.index()][y.index()]
    }
}

impl Default for CovarianceTable {
    fn default() -> Self {
        Self::standard()
    }
}

/// ω on a single word by explicit enumeration of ordered pair partitions:
/// `Σ_π Π_{(i<j)∈π} ω(x_i x_j)`.
pub fn omega_word(word: &[Generator], table: &CovarianceTable) -> CRational {
    fn rec(rest: &mut Vec<Generator>, table: &CovarianceTable) -> CRational {
        if rest.is_empty() {
            return CRational::one();
        }
        let first = rest.remove(0);
        let mut total = CRational::zero();
        for k in 0..rest.len() {
            let partner = rest.remove(k);
            let pair = table.two_point(first, partner);
            if !pair.is_zero() {
                total += &(pair * &rec(rest, table));
            }
            rest.insert(k, partner);
        }
        rest.insert(0, first);
        total
    }
    if word.len() % 2 == 1 {
        return CRational::zero();
    }
    rec(&mut word.to_vec(), table)
}

/// Wick sum for a run-length encoded word, memoized on remaining counts.
///
/// The earliest remaining element always sits in the first non-empty block
/// and pairs with a later element; identical elements inside a block make
/// the state depend on the counts alone.
pub fn omega_blocks(blocks: &[(Generator, u32)], table: &CovarianceTable) -> CRational {
    let total: u32 = blocks.iter().map(|b| b.1).sum();
    if total % 2 == 1 {
        return CRational::zero();
    }
    let gens: Vec<Generator> = blocks.iter().map(|b| b.0).collect();
    let mut memo: HashMap<Vec<u32>, CRational> = HashMap::new();
    fn rec(
        counts: &mut Vec<u32>,
        gens: &[Generator],
        table: &CovarianceTable,
        memo: &mut HashMap<Vec<u32>, CRational>,
    ) -> CRational {
        let Some(b) = counts.iter().position(|&n| n > 0) else {
            return CRational::one();
        };
        if let Some(v) = memo.get(counts.as_slice()) {
            return v.clone();
        }
        let mut total = CRational::zero();
        counts[b] -= 1;
        for b2 in b..counts.len() {
            let mult = counts[b2];
            if mult == 0 {
                continue;
            }
            let pair = table.two_point(gens[b], gens[b2]);
            if pair.is_zero() {
                continue;
            }
            counts[b2] -= 1;
            let sub = rec(counts, gens, table, memo);
            counts[b2] += 1;
            if !sub.is_zero() {
                let weight = CRational::from(mult as i64);
                total += &(&(&weight * pair) * &sub);
            }
        }
        counts[b] += 1;
        memo.insert(counts.clone(), total.clone());
        total
    }
    let mut counts: Vec<u32> = blocks.iter().map(|b| b.1).collect();
    rec(&mut counts, &gens, table, &mut memo)
}

pub fn omega_monomial(m: &Monomial, table: &CovarianceTable) -> CRational {
    omega_blocks(&m.blocks(), table)
}

/// ω extended linearly over the canonical terms of `e`.
pub fn omega(e: &AlgebraElement, table: &CovarianceTable) -> CRational {
    let mut total = CRational::zero();
    for (m, c) in e.terms() {
        total += &(c * &omega_monomial(m, table));
    }
    total
}

/// The vector `AΨ₀` of the GNS space, labelled by `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GnsVector(pub AlgebraElement);

impl GnsVector {
    pub fn vacuum() -> Self {
        Self(AlgebraElement::one())
    }

    pub fn label(&self) -> &AlgebraElement {
        &self.0
    }
}

impl From<AlgebraElement> for GnsVector {
    fn from(e: AlgebraElement) -> Self {
        Self(e)
    }
}

/// `⟨AΨ₀, BΨ₀⟩ = ω(A* B)`.
pub fn gns_inner(a: &GnsVector, b: &GnsVector, table: &CovarianceTable) -> CRational {
    omega(&(&a.0.star() * &b.0), table)
}
