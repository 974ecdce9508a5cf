//! Two-sided Brownian paths and the normalized complex Gaussian.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PathSample {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl PathSample {
    pub fn at(&self, tau: f64) -> Option<f64> {
        self.grid.iter().position(|&t| t == tau).map(|k| self.values[k])
    }
}

/// `z = z₁ + i z₂` with independent `N(0, 1/4)` components, i.e. the
/// density `2π⁻¹ e^{−2|z|²}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexGauss {
    pub z1: f64,
    pub z2: f64,
}

pub fn sample_complex_gauss<R: Rng + ?Sized>(rng: &mut R) -> ComplexGauss {
    let z1: f64 = rng.sample(StandardNormal);
    let z2: f64 = rng.sample(StandardNormal);
    ComplexGauss { z1: 0.5 * z1, z2: 0.5 * z2 }
}

/// Precomputed increments for sampling a two-sided Brownian motion on a
/// fixed sorted grid containing `0`.
#[derive(Clone, Debug)]
pub struct PathPlan {
    grid: Vec<f64>,
    origin: usize,
    sqrt_steps: Vec<f64>,
}

impl PathPlan {
    pub fn new(grid: &[f64]) -> Result<Self> {
        if grid.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidInput("grid contains a non-finite time".into()));
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("grid must be strictly increasing".into()));
        }
        let Some(origin) = grid.iter().position(|&t| t == 0.0) else {
            return Err(Error::InvalidInput("grid must contain 0".into()));
        };
        // sqrt_steps[k] is the standard deviation of ξ(grid[k]) − ξ(neighbour toward 0)
        let sqrt_steps = (0..grid.len())
            .map(|k| match k.cmp(&origin) {
                std::cmp::Ordering::Equal => 0.0,
                std::cmp::Ordering::Greater => (grid[k] - grid[k - 1]).sqrt(),
                std::cmp::Ordering::Less => (grid[k + 1] - grid[k]).sqrt(),
            })
            .collect();
        Ok(Self {
            grid: grid.to_vec(),
            origin,
            sqrt_steps,
        })
    }

    /// Plan over the distinct points of `taus` together with `0`.
    pub fn covering(taus: &[f64]) -> Result<Self> {
        let mut g: Vec<f64> = taus.iter().copied().chain(std::iter::once(0.0)).collect();
        if g.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidInput("times must be finite".into()));
        }
        g.sort_by(|a, b| a.partial_cmp(b).unwrap());
        g.dedup();
        Self::new(&g)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn index_of(&self, tau: f64) -> Option<usize> {
        self.grid.iter().position(|&t| t == tau)
    }

    /// Fills `out` with one path; the positive branch is drawn first, then
    /// the negative branch, each walking outward from `0`.
    pub fn fill<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) {
        out[self.origin] = 0.0;
        for k in self.origin + 1..self.grid.len() {
            let n: f64 = rng.sample(StandardNormal);
            out[k] = out[k - 1] + self.sqrt_steps[k] * n;
        }
        for k in (0..self.origin).rev() {
            let n: f64 = rng.sample(StandardNormal);
            out[k] = out[k + 1] + self.sqrt_steps[k] * n;
        }
    }
}

pub fn sample_two_sided_bm<R: Rng + ?Sized>(grid: &[f64], rng: &mut R) -> Result<PathSample> {
    let plan = PathPlan::new(grid)?;
    let mut values = vec![0.0; grid.len()];
    plan.fill(rng, &mut values);
    Ok(PathSample {
        grid: grid.to_vec(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn grid_must_contain_origin() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(sample_two_sided_bm(&[-1.0, 1.0], &mut rng).is_err());
        assert!(sample_two_sided_bm(&[1.0, 0.0], &mut rng).is_err());
        let p = sample_two_sided_bm(&[-1.0, 0.0, 0.5, 1.0], &mut rng).unwrap();
        assert_eq!(p.at(0.0), Some(0.0));
    }

    #[test]
    fn branch_covariances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let plan = PathPlan::new(&[-1.0, 0.0, 1.0]).unwrap();
        let n = 200_000;
        let (mut s11, mut s1m) = (0.0, 0.0);
        let mut buf = [0.0; 3];
        for _ in 0..n {
            plan.fill(&mut rng, &mut buf);
            s11 += buf[2] * buf[2];
            s1m += buf[2] * buf[0];
        }
        // stderr of ξ² is √2/√n, of ξ(1)ξ(−1) is 1/√n
        assert!((s11 / n as f64 - 1.0).abs() < 4.0 * 2f64.sqrt() / (n as f64).sqrt());
        assert!((s1m / n as f64).abs() < 4.0 / (n as f64).sqrt());
    }

    #[test]
    fn complex_gauss_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 200_000;
        let (mut abs2, mut re2, mut mixed) = (0.0, 0.0, 0.0);
        for _ in 0..n {
            let z = sample_complex_gauss(&mut rng);
            abs2 += z.z1 * z.z1 + z.z2 * z.z2;
            re2 += z.z1 * z.z1 - z.z2 * z.z2;
            // (z − z̄)² = (2 i z₂)²
            mixed += -4.0 * z.z2 * z.z2;
        }
        let nf = n as f64;
        assert!((abs2 / nf - 0.5).abs() < 0.01);
        assert!((re2 / nf).abs() < 0.01);
        assert!((mixed / nf + 1.0).abs() < 0.02);
    }
}
