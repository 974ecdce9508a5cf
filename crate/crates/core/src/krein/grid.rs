use crate::error::{Error, Result};

pub const MAX_GRID_POINTS: usize = 100_001;

/// Uniform grid `τ_k = (k₀ + k)·step`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    taus: Vec<f64>,
    step: f64,
    offset: i64,
}

impl Grid {
    /// Both ends must be integer multiples of `step` (to `1e-9` relative),
    /// which puts `0` exactly on the grid whenever it lies in range.
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite() && start.is_finite() && stop.is_finite()) {
            return Err(Error::InvalidInput(format!("bad grid {start}:{stop}:{step}")));
        }
        if stop < start {
            return Err(Error::InvalidInput("grid stop precedes start".into()));
        }
        let snap = |x: f64| -> Result<i64> {
            let k = (x / step).round();
            if (x / step - k).abs() > 1e-9 * k.abs().max(1.0) {
                return Err(Error::InvalidInput(format!("{x} is not a multiple of the step {step}")));
            }
            Ok(k as i64)
        };
        let (k0, k1) = (snap(start)?, snap(stop)?);
        let n = (k1 - k0 + 1) as usize;
        if n > MAX_GRID_POINTS {
            return Err(Error::ResourceLimit {
                len: n,
                bound: MAX_GRID_POINTS,
            });
        }
        Ok(Self {
            taus: (k0..=k1).map(|k| k as f64 * step).collect(),
            step,
            offset: k0,
        })
    }

    /// `[−half_width, half_width]`.
    pub fn symmetric(half_width: f64, step: f64) -> Result<Self> {
        Self::new(-half_width, half_width, step)
    }

    /// Parses `start:stop:step`.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(Error::InvalidInput(format!("grid spec `{spec}` is not start:stop:step")));
        };
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidInput(format!("bad number `{s}` in grid spec `{spec}`")))
        };
        Self::new(num(a)?, num(b)?, num(c)?)
    }

    pub fn taus(&self) -> &[f64] {
        &self.taus
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.taus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taus.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.offset + (self.offset + self.len() as i64 - 1) == 0
    }

    /// Index of the grid point nearest `tau`, if within `1e-9·step`.
    pub fn index_of(&self, tau: f64) -> Option<usize> {
        let k = (tau / self.step).round();
        if (tau / self.step - k).abs() > 1e-9 {
            return None;
        }
        let i = k as i64 - self.offset;
        (0..self.len() as i64).contains(&i).then_some(i as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_symmetry() {
        let g = Grid::parse("-5:5:0.2").unwrap();
        assert_eq!(g.len(), 51);
        assert!(g.is_symmetric());
        assert_eq!(g.taus()[25], 0.0);
        assert_eq!(g.index_of(-4.8), Some(1));
        assert_eq!(g.index_of(0.1), None);
        let h = Grid::parse("0:5:0.1").unwrap();
        assert!(!h.is_symmetric());
        assert_eq!(h.len(), 51);
        assert!(Grid::parse("0:5").is_err());
        assert!(Grid::parse("0:0.55:0.1").is_err());
        assert!(Grid::parse("1:0:0.1").is_err());
    }
}
