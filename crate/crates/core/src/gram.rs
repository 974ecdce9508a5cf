//! Hermitian Gram matrices of indefinite inner products and their inertia.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

/// Relative eigenvalue tolerance for counting zero modes.
pub const DEFAULT_ZERO_TOLERANCE: f64 = 1e-9;
const HERMITIAN_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn dimension(&self) -> usize {
        self.positive + self.negative + self.zero
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }
}

#[derive(Clone, Debug)]
pub struct GramMatrix {
    entries: DMatrix<Complex64>,
    eigenvalues: Vec<f64>,
    signature: Signature,
}

impl GramMatrix {
    /// Symmetrizes `entries` (which must already be Hermitian up to
    /// rounding) and classifies eigenvalues with
    /// [`DEFAULT_ZERO_TOLERANCE`] times the spectral radius.
    pub fn new(entries: DMatrix<Complex64>) -> Self {
        Self::with_tolerance(entries, DEFAULT_ZERO_TOLERANCE)
    }

    pub fn with_tolerance(entries: DMatrix<Complex64>, rel_tol: f64) -> Self {
        assert!(entries.is_square(), "Gram matrix must be square");
        let n = entries.nrows();
        if n == 0 {
            return Self {
                entries,
                eigenvalues: Vec::new(),
                signature: Signature::default(),
            };
        }
        let scale = entries.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
        for i in 0..n {
            for j in 0..n {
                let d = (entries[(i, j)] - entries[(j, i)].conj()).norm();
                assert!(
                    d <= HERMITIAN_TOLERANCE * scale,
                    "Gram matrix not Hermitian at ({i},{j}): {d}"
                );
            }
        }
        let herm = (&entries + entries.adjoint()).map(|z| z * 0.5);
        let mut eigenvalues: Vec<f64> = SymmetricEigen::new(herm).eigenvalues.iter().copied().collect();
        eigenvalues.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let radius = eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max);
        let tol = rel_tol * radius;
        let mut signature = Signature::default();
        for &ev in &eigenvalues {
            if ev > tol {
                signature.positive += 1;
            } else if ev < -tol {
                signature.negative += 1;
            } else {
                signature.zero += 1;
            }
        }
        Self {
            entries,
            eigenvalues,
            signature,
        }
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn dimension(&self) -> usize {
        self.entries.nrows()
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.eigenvalues.iter().map(|x| x.abs()).collect();
        s.sort_by(|a, b| b.partial_cmp(a).unwrap());
        s
    }
}
