//! Seeded test-function families: `meanzero:N`, `bumps:N`, `possupport:N`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ExtendedVector, Grid, MAX_FAMILY_SIZE};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// Differences of two bumps rescaled to have exactly zero mass.
    MeanZero(usize),
    /// Positive Gaussian bumps.
    Bumps(usize),
    /// Positive bumps supported in `τ > 0`.
    PosSupport(usize),
}

impl FamilySpec {
    pub fn len(&self) -> usize {
        match *self {
            Self::MeanZero(n) | Self::Bumps(n) | Self::PosSupport(n) => n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl std::str::FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, n) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("family spec `{s}` is not kind:N")))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad family size in `{s}`")))?;
        if n > MAX_FAMILY_SIZE {
            return Err(Error::ResourceLimit {
                len: n,
                bound: MAX_FAMILY_SIZE,
            });
        }
        match kind.trim() {
            "meanzero" => Ok(Self::MeanZero(n)),
            "bumps" => Ok(Self::Bumps(n)),
            "possupport" => Ok(Self::PosSupport(n)),
            other => Err(Error::InvalidInput(format!(
                "unknown family `{other}` (expected meanzero, bumps or possupport)"
            ))),
        }
    }
}

fn gaussian(grid: &Arc<Grid>, c0: f64, w: f64) -> Vec<f64> {
    grid.taus().iter().map(|t| (-(t - c0) * (t - c0) / (2.0 * w * w)).exp()).collect()
}

pub fn family(spec: FamilySpec, grid: &Arc<Grid>, seed: u64) -> Result<Vec<ExtendedVector>> {
    let taus = grid.taus();
    let (lo, hi) = (taus[0], taus[taus.len() - 1]);
    let span = hi - lo;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = |rng: &mut ChaCha8Rng| (span * (0.02 + 0.03 * rng.random::<f64>())).max(2.0 * grid.step());
    let center = |rng: &mut ChaCha8Rng, w: f64, left: f64| -> Result<f64> {
        let (a, b) = (left + 4.0 * w, hi - 4.0 * w);
        if a >= b {
            return Err(Error::InvalidInput("grid too short for the requested family".into()));
        }
        Ok(a + (b - a) * rng.random::<f64>())
    };
    let mut out = Vec::with_capacity(spec.len());
    for _ in 0..spec.len() {
        let values = match spec {
            FamilySpec::Bumps(_) => {
                let w = width(&mut rng);
                let c0 = center(&mut rng, w, lo)?;
                gaussian(grid, c0, w)
            }
            FamilySpec::PosSupport(_) => {
                let w = width(&mut rng);
                let c0 = center(&mut rng, w, lo.max(0.0))?;
                let mut v = gaussian(grid, c0, w);
                for (x, t) in v.iter_mut().zip(taus) {
                    if *t <= 0.0 {
                        *x = 0.0;
                    }
                }
                v
            }
            FamilySpec::MeanZero(_) => {
                let (w1, w2) = (width(&mut rng), width(&mut rng));
                let (c1, c2) = (center(&mut rng, w1, lo)?, center(&mut rng, w2, lo)?);
                let g1 = gaussian(grid, c1, w1);
                let g2 = gaussian(grid, c2, w2);
                let ratio = g1.iter().sum::<f64>() / g2.iter().sum::<f64>();
                let mut v: Vec<f64> = g1.iter().zip(&g2).map(|(a, b)| a - ratio * b).collect();
                // push the rounding residue of the mass into the largest entry
                let residue: f64 = v.iter().sum();
                let k = (0..v.len()).max_by(|&i, &j| v[i].abs().total_cmp(&v[j].abs())).unwrap_or(0);
                v[k] -= residue;
                v
            }
        };
        out.push(ExtendedVector::real_function(grid.clone(), &values)?);
    }
    Ok(out)
}
