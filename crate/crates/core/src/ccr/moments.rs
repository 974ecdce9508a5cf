//! Moment-level consequences of ω: the Weyl-exponential series and the
//! exact moment (Gram) matrix on `q^j p^k`.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebra::{AlgebraElement, Monomial};
use super::state::{gns_inner, omega_monomial, CovarianceTable, GnsVector};
use crate::error::{Error, Result};
use crate::gram::GramMatrix;
use crate::scalar::{rational_to_f64, CRational};

pub const MAX_SERIES_ORDER: u32 = 64;
pub const MAX_MOMENT_DEGREE: u32 = 6;

/// `Σ_{n,m≤N} (iα)^n (iβ)^m / (n! m!) · ω(q^n p^m)`, evaluated in floating
/// point from exact moments (standard table, `c = 0`).
pub fn weyl_moment_partial_sum(alpha: &BigRational, beta: &BigRational, order: u32) -> Result<Complex64> {
    if order > MAX_SERIES_ORDER {
        return Err(Error::InvalidInput(format!(
            "series order {order} exceeds {MAX_SERIES_ORDER}"
        )));
    }
    let table = CovarianceTable::standard();
    let a = rational_to_f64(alpha);
    let b = rational_to_f64(beta);
    let mut fact = vec![BigInt::one()];
    for k in 1..=order {
        let next = &fact[k as usize - 1] * BigInt::from(k);
        fact.push(next);
    }
    let mut total = Complex64::new(0.0, 0.0);
    for n in 0..=order {
        for m in 0..=order {
            let moment = omega_monomial(&Monomial::new(n, m, 0, 0), &table);
            if moment.is_zero() {
                continue;
            }
            let denom = CRational::real(BigRational::from_integer(&fact[n as usize] * &fact[m as usize]));
            let exact = &(&moment * &CRational::i_pow((n + m) as i64)) / &denom;
            total += exact.to_complex64() * a.powi(n as i32) * b.powi(m as i32);
        }
    }
    Ok(total)
}

/// Gram matrix of `{q^j p^k Ψ₀ : j + k ≤ N}` with its exact determinant.
#[derive(Clone, Debug)]
pub struct MomentMatrix {
    pub basis: Vec<Monomial>,
    pub exact: Vec<Vec<CRational>>,
    pub determinant: CRational,
    pub gram: GramMatrix,
}

/// Basis ordered by total degree, then by descending power of `q`.
pub fn moment_basis(max_degree: u32) -> Vec<Monomial> {
    (0..=max_degree)
        .flat_map(|d| (0..=d).rev().map(move |j| Monomial::new(j, d - j, 0, 0)))
        .collect()
}

pub fn moment_matrix(max_degree: u32, table: &CovarianceTable) -> Result<MomentMatrix> {
    if max_degree > MAX_MOMENT_DEGREE {
        return Err(Error::InvalidInput(format!(
            "moment degree {max_degree} exceeds {MAX_MOMENT_DEGREE}"
        )));
    }
    let basis = moment_basis(max_degree);
    let vecs: Vec<GnsVector> = basis
        .iter()
        .map(|m| GnsVector(AlgebraElement::monomial(*m, CRational::one())))
        .collect();
    let exact: Vec<Vec<CRational>> = vecs
        .iter()
        .map(|a| vecs.iter().map(|b| gns_inner(a, b, table)).collect())
        .collect();
    let n = basis.len();
    let floats = DMatrix::from_fn(n, n, |i, j| exact[i][j].to_complex64());
    Ok(MomentMatrix {
        determinant: exact_determinant(exact.clone()),
        gram: GramMatrix::new(floats),
        basis,
        exact,
    })
}

/// Fraction-exact Gaussian elimination over complex rationals.
pub fn exact_determinant(mut m: Vec<Vec<CRational>>) -> CRational {
    let n = m.len();
    let mut det = CRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return CRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let inv = m[col][col].inv().expect("nonzero pivot");
        det = &det * &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] -= &sub;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn moment_matrix_degree_one() {
        let mm = moment_matrix(1, &CovarianceTable::standard()).unwrap();
        assert_eq!(mm.basis, vec![Monomial::ONE, Monomial::new(1, 0, 0, 0), Monomial::new(0, 1, 0, 0)]);
        assert_eq!(mm.determinant, CRational::real(rat(-1, 4)));
        assert_eq!(mm.gram.signature().negative, 1);
    }

    #[test]
    fn moment_matrix_degree_zero() {
        let mm = moment_matrix(0, &CovarianceTable::standard()).unwrap();
        assert_eq!(mm.determinant, CRational::one());
    }

    #[test]
    fn moment_matrix_degree_bound() {
        assert!(moment_matrix(7, &CovarianceTable::standard()).is_err());
    }

    #[test]
    fn determinant_of_known_matrix() {
        let r = |n| CRational::from(n);
        let m = vec![vec![r(2), r(1), r(0)], vec![r(1), r(3), r(1)], vec![r(0), r(1), r(4)]];
        assert_eq!(exact_determinant(m), r(18));
        let sing = vec![vec![r(1), r(2)], vec![r(2), r(4)]];
        assert!(exact_determinant(sing).is_zero());
    }

    #[test]
    fn partial_sum_alpha_zero_is_one() {
        for n in [0, 3, 17] {
            let v = weyl_moment_partial_sum(&rat(0, 1), &rat(9, 4), n).unwrap();
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
        assert!(weyl_moment_partial_sum(&rat(1, 1), &rat(1, 1), 65).is_err());
    }
}
