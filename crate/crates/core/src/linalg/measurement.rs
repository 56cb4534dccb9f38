use std::collections::BTreeMap;

use serde::Serialize;

use super::{inner, norm_sqr, orthogonal_complement, StateVector, C64, TOL, ZERO};
use crate::error::{Error, Result};

/// Probability distribution over integer outcome labels.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutcomeDistribution {
    probs: BTreeMap<usize, f64>,
}

impl OutcomeDistribution {
    pub fn new(probs: BTreeMap<usize, f64>) -> Result<Self> {
        Self::with_tolerance(probs, TOL)
    }

    pub fn with_tolerance(mut probs: BTreeMap<usize, f64>, tol: f64) -> Result<Self> {
        for (label, p) in probs.iter_mut() {
            if !p.is_finite() || *p < -tol || *p > 1.0 + tol {
                return Err(Error::InvalidParameter(format!(
                    "probability {p} of outcome {label} is outside [0, 1]"
                )));
            }
            *p = p.clamp(0.0, 1.0);
        }
        let total: f64 = probs.values().sum();
        if (total - 1.0).abs() > tol {
            return Err(Error::InvalidParameter(format!("probabilities sum to {total}")));
        }
        Ok(OutcomeDistribution { probs })
    }

    /// Probability of `label`; labels never seen read as 0.
    pub fn get(&self, label: usize) -> f64 {
        self.probs.get(&label).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.probs.iter().map(|(&k, &v)| (k, v))
    }

    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }
}

/// `Σ_a |d1(a) - d2(a)|` over the union of labels.
pub fn l1_distance(d1: &OutcomeDistribution, d2: &OutcomeDistribution) -> f64 {
    let labels: std::collections::BTreeSet<usize> =
        d1.probs.keys().chain(d2.probs.keys()).copied().collect();
    labels.into_iter().map(|a| (d1.get(a) - d2.get(a)).abs()).sum()
}

/// A complete projective measurement: labelled, mutually orthogonal
/// subspaces, each given by an orthonormal basis, together spanning `C^dim`.
#[derive(Clone, Debug)]
pub struct ProjectiveMeasurement {
    dim: usize,
    outcomes: Vec<(usize, Vec<Vec<C64>>)>,
}

impl ProjectiveMeasurement {
    pub fn new(dim: usize, outcomes: Vec<(usize, Vec<Vec<C64>>)>) -> Result<Self> {
        Self::with_tolerance(dim, outcomes, TOL)
    }

    pub fn with_tolerance(
        dim: usize,
        outcomes: Vec<(usize, Vec<Vec<C64>>)>,
        tol: f64,
    ) -> Result<Self> {
        let mut labels = std::collections::BTreeSet::new();
        for (label, _) in &outcomes {
            if !labels.insert(*label) {
                return Err(Error::InvalidMeasurement(format!("duplicate label {label}")));
            }
        }
        let all: Vec<&Vec<C64>> = outcomes.iter().flat_map(|(_, b)| b.iter()).collect();
        if let Some(v) = all.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
        }
        if all.len() != dim {
            return Err(Error::InvalidMeasurement(format!(
                "subspace ranks add to {} but the space has dimension {dim}",
                all.len()
            )));
        }
        // one orthonormal family across all outcomes <=> orthogonal subspaces
        // whose projectors sum to the identity
        for (a, u) in all.iter().enumerate() {
            for v in &all[a..] {
                let want = if std::ptr::eq(*u, *v) { 1.0 } else { 0.0 };
                let g = inner(u, v);
                if (g - C64::new(want, 0.0)).norm() > tol {
                    return Err(Error::InvalidMeasurement(
                        "subspace bases are not jointly orthonormal".into(),
                    ));
                }
            }
        }
        Ok(ProjectiveMeasurement { dim, outcomes })
    }

    /// Measurement in the standard basis; outcome `k` is `|k>`.
    pub fn standard_basis(dim: usize) -> Self {
        let outcomes = (0..dim)
            .map(|k| (k, vec![StateVector::basis(dim, k).into_amplitudes()]))
            .collect();
        ProjectiveMeasurement { dim, outcomes }
    }

    /// Measurement in an orthonormal basis; outcome `k` is `basis[k]`.
    pub fn in_basis(basis: &[StateVector]) -> Result<Self> {
        let dim = basis.first().map(StateVector::dim).unwrap_or(0);
        Self::new(
            dim,
            basis
                .iter()
                .enumerate()
                .map(|(k, b)| (k, vec![b.amplitudes().to_vec()]))
                .collect(),
        )
    }

    /// Two-outcome measurement: outcome 1 is span(`one`), outcome 0 its
    /// orthogonal complement.
    pub fn binary(dim: usize, one: Vec<Vec<C64>>) -> Result<Self> {
        let zero = orthogonal_complement(dim, &one);
        Self::new(dim, vec![(0, zero), (1, one)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outcomes(&self) -> impl Iterator<Item = (usize, &[Vec<C64>])> {
        self.outcomes.iter().map(|(l, b)| (*l, b.as_slice()))
    }

    pub(crate) fn project(&self, basis: &[Vec<C64>], v: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; self.dim];
        for b in basis {
            let c = inner(b, v);
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }
}

/// Measures `v`. Returns the outcome distribution and the renormalized
/// post-measurement state for every outcome of non-zero probability.
pub fn measure(
    m: &ProjectiveMeasurement,
    v: &StateVector,
) -> Result<(OutcomeDistribution, BTreeMap<usize, StateVector>)> {
    if m.dim != v.dim() {
        return Err(Error::DimensionMismatch { expected: m.dim, found: v.dim() });
    }
    let mut probs = BTreeMap::new();
    let mut collapsed = BTreeMap::new();
    for (label, basis) in &m.outcomes {
        let proj = m.project(basis, v.amplitudes());
        let p = norm_sqr(&proj);
        probs.insert(*label, p);
        if p > 0.0 {
            collapsed.insert(*label, StateVector::normalized(proj)?);
        }
    }
    Ok((OutcomeDistribution::new(probs)?, collapsed))
}
