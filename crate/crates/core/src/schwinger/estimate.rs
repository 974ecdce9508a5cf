//! Monte Carlo estimators with deterministic, chunk-independent sampling.
//!
//! Sample `k` draws from its own ChaCha8 stream (`seed`, stream `k`), so the
//! sampled values do not depend on how samples are grouped. Chunks are
//! reduced in parallel with compensated sums and merged in chunk order,
//! which makes the result bit-identical across runs and thread counts, and
//! equal up to summation rounding across chunk sizes.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampling::{sample_complex_gauss, PathPlan};
use super::{check_krein_alpha, kernel_s, KernelParams};
use crate::error::{Error, Result};
use crate::scalar::CompensatedSum;
use crate::weyl::total_charge_vanishes;

/// Seed used whenever none is given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    /// Quadrature weight for grid functions built from point values.
    pub step: f64,
    pub chunk: u64,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            samples: 1_000_000,
            seed: DEFAULT_SEED,
            step: 1.0,
            chunk: 65_536,
        }
    }
}

impl McConfig {
    pub fn with_samples(samples: u64, seed: u64) -> Self {
        Self {
            samples,
            seed,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidInput("samples must be at least 1".into()));
        }
        if self.chunk == 0 {
            return Err(Error::InvalidInput("chunk size must be at least 1".into()));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::InvalidInput(format!("step must be positive, got {}", self.step)));
        }
        Ok(())
    }
}

/// Sample mean with `stderr = s/√n` (`s` the unbiased sample standard
/// deviation of the complex values). `samples = 0` marks an exact result.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: Complex64,
    pub stderr: f64,
    pub samples: u64,
}

impl McEstimate {
    pub fn exact(value: Complex64) -> Self {
        Self {
            mean: value,
            stderr: 0.0,
            samples: 0,
        }
    }

    /// `|mean − target| / stderr`; `0` when both vanish.
    pub fn sigma_distance(&self, target: Complex64) -> f64 {
        let d = (self.mean - target).norm();
        if d == 0.0 {
            0.0
        } else {
            d / self.stderr
        }
    }

    pub fn within(&self, target: Complex64, sigmas: f64) -> bool {
        self.sigma_distance(target) <= sigmas
    }
}

#[derive(Clone, Default)]
struct Sums {
    re: CompensatedSum,
    im: CompensatedSum,
    sq: CompensatedSum,
}

impl Sums {
    fn merge(&mut self, o: &Sums) {
        self.re.merge(&o.re);
        self.im.merge(&o.im);
        self.sq.merge(&o.sq);
    }
}

fn run<F>(cfg: &McConfig, scratch: usize, sample: F) -> Result<McEstimate>
where
    F: Fn(&mut ChaCha8Rng, &mut [f64]) -> Complex64 + Sync,
{
    cfg.validate()?;
    let base = ChaCha8Rng::seed_from_u64(cfg.seed);
    let chunks = cfg.samples.div_ceil(cfg.chunk);
    let partial: Vec<Sums> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut buf = vec![0.0; scratch];
            let mut s = Sums::default();
            let end = ((c + 1) * cfg.chunk).min(cfg.samples);
            for k in c * cfg.chunk..end {
                let mut rng = base.clone();
                rng.set_stream(k);
                let x = sample(&mut rng, &mut buf);
                s.re.add(x.re);
                s.im.add(x.im);
                s.sq.add(x.norm_sqr());
            }
            s
        })
        .collect();
    let mut total = Sums::default();
    for p in &partial {
        total.merge(p);
    }
    let n = cfg.samples as f64;
    let mean = Complex64::new(total.re.value() / n, total.im.value() / n);
    let stderr = if cfg.samples > 1 {
        let var = ((total.sq.value() - n * mean.norm_sqr()) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    } else {
        f64::NAN
    };
    Ok(McEstimate {
        mean,
        stderr,
        samples: cfg.samples,
    })
}

fn plan_with_indices(taus: &[f64]) -> Result<(PathPlan, Vec<usize>)> {
    let plan = PathPlan::covering(taus)?;
    let idx = taus.iter().map(|&t| plan.index_of(t).expect("covered")).collect();
    Ok((plan, idx))
}

/// Estimates `⟨x(τ₁)…x(τₙ)⟩` through `E[Π(ξ(τ_k) + z − |τ_k| z̄)]`; the real
/// part of each sample is averaged.
pub fn mc_moment(taus: &[f64], params: &KernelParams, cfg: &McConfig) -> Result<McEstimate> {
    if params.c != 0.0 {
        return Err(Error::UnsupportedDomain(
            "the path-integral representation is available only for c = 0".into(),
        ));
    }
    let (plan, idx) = plan_with_indices(taus)?;
    let abs: Vec<f64> = taus.iter().map(|t| t.abs()).collect();
    run(cfg, plan.grid().len(), |rng, buf| {
        plan.fill(rng, buf);
        let z = sample_complex_gauss(rng);
        let z = Complex64::new(z.z1, z.z2);
        let mut prod = Complex64::new(1.0, 0.0);
        for (k, &i) in idx.iter().enumerate() {
            prod *= buf[i] + z - abs[k] * z.conj();
        }
        Complex64::new(prod.re, 0.0)
    })
}

/// Finitely supported test function: values at `taus`, integrated with the
/// rectangle rule of constant `weight` (`1` for point masses).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    pub taus: Vec<f64>,
    pub values: Vec<f64>,
    pub weight: f64,
}

impl GridFunction {
    pub fn new(taus: Vec<f64>, values: Vec<f64>, weight: f64) -> Result<Self> {
        if taus.len() != values.len() {
            return Err(Error::LengthMismatch {
                left: taus.len(),
                right: values.len(),
            });
        }
        if !(weight > 0.0) {
            return Err(Error::InvalidInput("quadrature weight must be positive".into()));
        }
        Ok(Self { taus, values, weight })
    }

    pub fn point_masses(taus: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Self::new(taus, values, 1.0)
    }

    /// `∫ f`.
    pub fn mass(&self) -> f64 {
        self.weight * self.values.iter().sum::<f64>()
    }

    /// `∫ |τ| f`.
    pub fn abs_moment(&self) -> f64 {
        self.weight * self.taus.iter().zip(&self.values).map(|(t, f)| t.abs() * f).sum::<f64>()
    }

    /// `⟨f, f⟩ = ∫∫ f(τ) S(τ−σ) f(σ)` at `c = 0`, same quadrature.
    pub fn indefinite_norm(&self) -> f64 {
        let p = KernelParams::default();
        let mut acc = 0.0;
        for (t, f) in self.taus.iter().zip(&self.values) {
            for (s, g) in self.taus.iter().zip(&self.values) {
                acc += f * g * kernel_s(*t, *s, &p);
            }
        }
        acc * self.weight * self.weight
    }

    /// `e^{−⟨f,f⟩/2}`.
    pub fn characteristic_target(&self) -> f64 {
        (-self.indefinite_norm() / 2.0).exp()
    }
}

/// Estimates `⟨e^{i x(f)}⟩` via `E[e^{i(ξ(f) + a z − b z̄)}]` with `a = ∫f`,
/// `b = ∫|τ|f`.
pub fn mc_characteristic(f: &GridFunction, cfg: &McConfig) -> Result<McEstimate> {
    let (plan, idx) = plan_with_indices(&f.taus)?;
    let (a, b) = (f.mass(), f.abs_moment());
    let w = f.weight;
    run(cfg, plan.grid().len(), |rng, buf| {
        plan.fill(rng, buf);
        let z = sample_complex_gauss(rng);
        let z = Complex64::new(z.z1, z.z2);
        let xi: f64 = w * idx.iter().zip(&f.values).map(|(&i, v)| v * buf[i]).sum::<f64>();
        let phase = Complex64::new(xi, 0.0) + a * z - b * z.conj();
        (Complex64::i() * phase).exp()
    })
}

/// Estimates the Weyl Schwinger function through `E[cos(Σ α_k y(τ_k))]`
/// over two-sided Brownian `y`; the charge delta is applied exactly.
pub fn mc_weyl_schwinger(alphas: &[f64], taus: &[f64], cfg: &McConfig) -> Result<McEstimate> {
    if alphas.len() != taus.len() {
        return Err(Error::LengthMismatch {
            left: alphas.len(),
            right: taus.len(),
        });
    }
    cfg.validate()?;
    if !total_charge_vanishes(alphas)? {
        return Ok(McEstimate::exact(Complex64::new(0.0, 0.0)));
    }
    let (plan, idx) = plan_with_indices(taus)?;
    run(cfg, plan.grid().len(), |rng, buf| {
        plan.fill(rng, buf);
        let s: f64 = idx.iter().zip(alphas).map(|(&i, a)| a * buf[i]).sum();
        Complex64::new(s.cos(), 0.0)
    })
}

/// Estimates moments of `dμ_α` through `E[Π(ξ(τ_k) + x − |τ_k| v)]` with
/// `x = α⁻¹(z₁+z₂)`, `v = −α(z₁−z₂)`.
pub fn mc_krein_moment(taus: &[f64], alpha: f64, cfg: &McConfig) -> Result<McEstimate> {
    check_krein_alpha(alpha)?;
    let (plan, idx) = plan_with_indices(taus)?;
    let abs: Vec<f64> = taus.iter().map(|t| t.abs()).collect();
    run(cfg, plan.grid().len(), |rng, buf| {
        plan.fill(rng, buf);
        let z = sample_complex_gauss(rng);
        let x = (z.z1 + z.z2) / alpha;
        let v = -alpha * (z.z1 - z.z2);
        let prod: f64 = idx.iter().zip(&abs).map(|(&i, a)| buf[i] + x - a * v).product();
        Complex64::new(prod, 0.0)
    })
}
