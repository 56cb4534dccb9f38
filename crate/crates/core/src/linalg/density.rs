use nalgebra::DMatrix;

use super::{StateVector, C64, TOL, ZERO};
use crate::error::{Error, Result};

/// Hermitian, positive semidefinite, unit-trace matrix (row-major).
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl DensityMatrix {
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        Self::with_tolerance(dim, entries, TOL)
    }

    pub fn with_tolerance(dim: usize, entries: Vec<C64>, tol: f64) -> Result<Self> {
        if entries.len() != dim * dim || dim == 0 {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        let rho = DensityMatrix { dim, entries };
        for r in 0..dim {
            for c in r..dim {
                if (rho.get(r, c) - rho.get(c, r).conj()).norm() > tol {
                    return Err(Error::InvalidState("density matrix is not Hermitian".into()));
                }
            }
        }
        let tr: f64 = (0..dim).map(|k| rho.get(k, k).re).sum();
        if (tr - 1.0).abs() > tol {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        if let Some(&low) = rho.eigenvalues().iter().find(|&&l| l < -tol) {
            return Err(Error::InvalidState(format!("negative eigenvalue {low}")));
        }
        Ok(rho)
    }

    /// `|v><v|`.
    pub fn pure(v: &StateVector) -> Self {
        let a = v.amplitudes();
        let dim = a.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for x in a {
            entries.extend(a.iter().map(|y| x * y.conj()));
        }
        DensityMatrix { dim, entries }
    }

    /// Diagonal matrix with the given eigenvalues.
    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        let dim = probs.len();
        let mut entries = vec![ZERO; dim * dim];
        for (k, p) in probs.iter().enumerate() {
            entries[k * dim + k] = C64::new(*p, 0.0);
        }
        Self::new(dim, entries)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let mut entries = vec![ZERO; dim * dim];
        for k in 0..dim {
            entries[k * dim + k] = C64::new(1.0 / dim as f64, 0.0);
        }
        DensityMatrix { dim, entries }
    }

    /// `Σ w_k ρ_k`; weights must sum to 1.
    pub fn mixture(parts: &[(f64, DensityMatrix)]) -> Result<Self> {
        let dim = parts
            .first()
            .map(|(_, r)| r.dim)
            .ok_or_else(|| Error::InvalidParameter("empty mixture".into()))?;
        let mut entries = vec![ZERO; dim * dim];
        for (w, rho) in parts {
            if rho.dim != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: rho.dim });
            }
            for (e, x) in entries.iter_mut().zip(&rho.entries) {
                *e += x * *w;
            }
        }
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > TOL || parts.iter().any(|(w, _)| *w < 0.0) {
            return Err(Error::InvalidParameter(format!("mixture weights sum to {total}")));
        }
        Ok(DensityMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.entries[r * self.dim + c]
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let m = DMatrix::from_row_slice(self.dim, self.dim, &self.entries);
        let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// `-Σ λ log2 λ` over the eigenvalues of `rho`, with `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues()
        .into_iter()
        .filter(|&l| l > 1e-15)
        .map(|l| -l * l.log2())
        .sum::<f64>()
        .max(0.0)
}
