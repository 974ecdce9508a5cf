//! Indefinite Schwinger functions: the analytic pair-partition oracle and
//! Monte Carlo estimators for the functional-integral representations.

mod estimate;
mod request;
mod sampling;

pub use estimate::{
    mc_characteristic, mc_krein_moment, mc_moment, mc_weyl_schwinger, GridFunction, McConfig, McEstimate,
    DEFAULT_SEED,
};
pub use request::{evaluate_request, write_csv, McMode, McRequest, McResponse};
pub use sampling::{sample_complex_gauss, sample_two_sided_bm, ComplexGauss, PathPlan, PathSample};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest moment order accepted by the pair-partition oracles.
pub const MAX_WICK_ORDER: usize = 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    pub c: f64,
}

/// `S(τ − σ) = c − |τ − σ|/2`.
pub fn kernel_s(tau: f64, sigma: f64, params: &KernelParams) -> f64 {
    params.c - (tau - sigma).abs() / 2.0
}

/// Krein covariance `K_α(τ,σ) = −|τ−σ|/2 + (|τ| + |σ| + α⁻² + α²|τ||σ|)/2`.
pub fn krein_kernel(tau: f64, sigma: f64, alpha: f64) -> f64 {
    let (a, b) = (tau.abs(), sigma.abs());
    -(tau - sigma).abs() / 2.0 + (a + b + alpha.powi(-2) + alpha * alpha * a * b) / 2.0
}

/// Two-sided Brownian covariance `(|τ| + |σ| − |τ−σ|)/2`.
pub fn bm_covariance(tau: f64, sigma: f64) -> f64 {
    (tau.abs() + sigma.abs() - (tau - sigma).abs()) / 2.0
}

/// `E[(z − |τ| z̄)(z − |σ| z̄)] = −(|τ| + |σ|)/2` under the normalized
/// complex Gaussian.
pub fn complex_pair_covariance(tau: f64, sigma: f64) -> f64 {
    -(tau.abs() + sigma.abs()) / 2.0
}

fn check_krein_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidInput(format!("alpha must be positive, got {alpha}")));
    }
    Ok(())
}

/// Sum over perfect matchings of `Π kernel(τ_i, τ_j)`: a hafnian computed by
/// subset recursion on the lowest unpaired index, `O(2ⁿ n)`.
pub fn pair_partition_sum(taus: &[f64], kernel: impl Fn(f64, f64) -> f64) -> Result<f64> {
    let n = taus.len();
    if n > MAX_WICK_ORDER {
        return Err(Error::ResourceLimit {
            len: n,
            bound: MAX_WICK_ORDER,
        });
    }
    if n % 2 == 1 {
        return Ok(0.0);
    }
    let k: Vec<Vec<f64>> = taus.iter().map(|&a| taus.iter().map(|&b| kernel(a, b)).collect()).collect();
    let mut dp = vec![0.0f64; 1 << n];
    dp[0] = 1.0;
    for mask in 1usize..(1 << n) {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let low = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << low);
        let mut acc = 0.0;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            acc += k[low][j] * dp[rest & !(1 << j)];
        }
        dp[mask] = acc;
    }
    Ok(dp[(1 << n) - 1])
}

/// Gaussian moment `⟨x(τ₁)…x(τₙ)⟩` of the indefinite functional.
pub fn wick_moment(taus: &[f64], params: &KernelParams) -> Result<f64> {
    pair_partition_sum(taus, |a, b| kernel_s(a, b, params))
}

/// Moment of the positive Krein measure `dμ_α`.
pub fn krein_wick_moment(taus: &[f64], alpha: f64) -> Result<f64> {
    check_krein_alpha(alpha)?;
    pair_partition_sum(taus, |a, b| krein_kernel(a, b, alpha))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        let p0 = KernelParams::default();
        assert_eq!(kernel_s(1.0, 1.0, &p0), 0.0);
        assert_eq!(kernel_s(1.0, -1.0, &p0), -1.0);
        assert_eq!(kernel_s(0.0, 2.0, &KernelParams { c: 1.0 }), 0.0);
    }

    #[test]
    fn wick_examples() {
        let p0 = KernelParams::default();
        assert_eq!(wick_moment(&[1.0, -1.0], &p0).unwrap(), -1.0);
        assert_eq!(wick_moment(&[1.0, 2.0, 3.0], &p0).unwrap(), 0.0);
        assert_eq!(wick_moment(&[1.0, -1.0, 1.0, -1.0], &p0).unwrap(), 2.0);
        assert_eq!(wick_moment(&[], &p0).unwrap(), 1.0);
        assert!(matches!(wick_moment(&[0.0; 22], &p0), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn krein_kernel_examples() {
        assert_eq!(krein_kernel(0.0, 0.0, 1.0), 0.5);
        assert_eq!(krein_kernel(1.0, 1.0, 1.0), 2.0);
        assert!(krein_wick_moment(&[0.0, 0.0], 0.0).is_err());
    }

    #[test]
    fn six_point_matches_fifteen_pairings() {
        let taus = [-1.3, 0.2, 0.7, 2.0, -0.4, 1.1];
        let k = |i: usize, j: usize| kernel_s(taus[i], taus[j], &KernelParams { c: 0.3 });
        let mut brute = 0.0;
        for a in 1..6 {
            let rest: Vec<usize> = (1..6).filter(|&x| x != a).collect();
            for b in 1..4 {
                let r2: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != rest[b]).collect();
                brute += k(0, a) * k(rest[0], rest[b]) * k(r2[0], r2[1]);
            }
        }
        let v = wick_moment(&taus, &KernelParams { c: 0.3 }).unwrap();
        assert!((v - brute).abs() < 1e-12, "{v} vs {brute}");
    }
}
