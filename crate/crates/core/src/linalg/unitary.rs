use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{orthonormalize, StateVector, C64, ONE, TOL, ZERO};
use crate::error::{Error, Result};

/// A unitary operator stored column-sparse.
///
/// Automaton unitaries are mostly permutations on thousands of basis
/// states, so only non-zero entries are kept. Unitarity (`U†U = I`) is
/// checked by every constructor.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryOp {
    dim: usize,
    cols: Vec<Vec<(usize, C64)>>,
}

impl UnitaryOp {
    /// Builds from column lists `cols[j] = [(row, value), ...]`.
    pub fn from_columns(dim: usize, cols: Vec<Vec<(usize, C64)>>) -> Result<Self> {
        Self::from_columns_with_tolerance(dim, cols, TOL)
    }

    pub fn from_columns_with_tolerance(
        dim: usize,
        cols: Vec<Vec<(usize, C64)>>,
        tol: f64,
    ) -> Result<Self> {
        if cols.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: cols.len() });
        }
        let mut cols = cols;
        for col in &mut cols {
            if let Some(&(r, _)) = col.iter().find(|(r, _)| *r >= dim) {
                return Err(Error::DimensionMismatch { expected: dim, found: r + 1 });
            }
            col.retain(|(_, v)| *v != ZERO);
            col.sort_by_key(|(r, _)| *r);
            col.dedup_by(|b, a| {
                if a.0 == b.0 {
                    a.1 += b.1;
                    true
                } else {
                    false
                }
            });
        }
        let u = UnitaryOp { dim, cols };
        let deviation = u.unitarity_defect();
        if deviation > tol {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(u)
    }

    /// Builds from dense rows.
    pub fn from_dense(rows: &[Vec<C64>]) -> Result<Self> {
        Self::from_dense_with_tolerance(rows, TOL)
    }

    pub fn from_dense_with_tolerance(rows: &[Vec<C64>], tol: f64) -> Result<Self> {
        let dim = rows.len();
        let mut cols = vec![Vec::new(); dim];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            for (c, v) in row.iter().enumerate() {
                if *v != ZERO {
                    cols[c].push((r, *v));
                }
            }
        }
        Self::from_columns_with_tolerance(dim, cols, tol)
    }

    /// `U|j> = |perm[j]>`.
    pub fn from_permutation(perm: &[usize]) -> Result<Self> {
        let dim = perm.len();
        let mut seen = vec![false; dim];
        for &p in perm {
            if p >= dim || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter(format!(
                    "{perm:?} is not a permutation of 0..{dim}"
                )));
            }
        }
        Ok(UnitaryOp { dim, cols: perm.iter().map(|&p| vec![(p, ONE)]).collect() })
    }

    pub fn identity(dim: usize) -> Self {
        UnitaryOp { dim, cols: (0..dim).map(|j| vec![(j, ONE)]).collect() }
    }

    /// Real rotation `[[cos θ, -sin θ], [sin θ, cos θ]]`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        UnitaryOp {
            dim: 2,
            cols: vec![
                vec![(0, C64::new(c, 0.0)), (1, C64::new(s, 0.0))],
                vec![(0, C64::new(-s, 0.0)), (1, C64::new(c, 0.0))],
            ],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, j: usize) -> &[(usize, C64)] {
        &self.cols[j]
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.cols[col]
            .binary_search_by_key(&row, |(r, _)| *r)
            .map(|k| self.cols[col][k].1)
            .unwrap_or(ZERO)
    }

    pub fn to_dense(&self) -> Vec<Vec<C64>> {
        let mut rows = vec![vec![ZERO; self.dim]; self.dim];
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                rows[r][c] = v;
            }
        }
        rows
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// True when every column holds a single entry equal to 1.
    pub fn is_permutation(&self) -> bool {
        self.cols.iter().all(|c| c.len() == 1 && c[0].1 == ONE)
    }

    /// Image of basis state `j` when `U` is a permutation.
    pub fn permutation_image(&self, j: usize) -> Option<usize> {
        match self.cols[j].as_slice() {
            [(r, v)] if *v == ONE => Some(*r),
            _ => None,
        }
    }

    /// `max |(U†U - I)_{jk}|`.
    pub fn unitarity_defect(&self) -> f64 {
        let mut rows: Vec<Vec<(usize, C64)>> = vec![Vec::new(); self.dim];
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                rows[r].push((c, v));
            }
        }
        let mut gram: HashMap<(usize, usize), C64> = HashMap::new();
        for row in &rows {
            for &(j, a) in row {
                for &(k, b) in row {
                    *gram.entry((j, k)).or_insert(ZERO) += a.conj() * b;
                }
            }
        }
        let mut worst = 0.0f64;
        for j in 0..self.dim {
            let d = gram.get(&(j, j)).copied().unwrap_or(ZERO);
            worst = worst.max((d - ONE).norm());
        }
        for (&(j, k), v) in &gram {
            if j != k {
                worst = worst.max(v.norm());
            }
        }
        worst
    }

    pub(crate) fn apply_slice(&self, v: &[C64]) -> Vec<C64> {
        debug_assert_eq!(v.len(), self.dim);
        let mut out = vec![ZERO; self.dim];
        for (c, col) in self.cols.iter().enumerate() {
            let x = v[c];
            if x == ZERO {
                continue;
            }
            for &(r, u) in col {
                out[r] += u * x;
            }
        }
        out
    }

    pub fn adjoint(&self) -> UnitaryOp {
        let mut cols: Vec<Vec<(usize, C64)>> = vec![Vec::new(); self.dim];
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                cols[r].push((c, v.conj()));
            }
        }
        UnitaryOp { dim: self.dim, cols }
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &UnitaryOp) -> Result<UnitaryOp> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, C64> = BTreeMap::new();
                for &(k, b) in col {
                    for &(r, a) in &self.cols[k] {
                        *acc.entry(r).or_insert(ZERO) += a * b;
                    }
                }
                acc.into_iter().collect()
            })
            .collect();
        UnitaryOp::from_columns(self.dim, cols)
    }

    /// `self ⊗ other`.
    pub fn kron(&self, other: &UnitaryOp) -> UnitaryOp {
        let d = other.dim;
        let mut cols = Vec::with_capacity(self.dim * d);
        for a in &self.cols {
            for b in &other.cols {
                let mut col = Vec::with_capacity(a.len() * b.len());
                for &(ra, va) in a {
                    for &(rb, vb) in b {
                        col.push((ra * d + rb, va * vb));
                    }
                }
                cols.push(col);
            }
        }
        UnitaryOp { dim: self.dim * d, cols }
    }
}

/// `U|v>`; fails on dimension mismatch.
pub fn apply(u: &UnitaryOp, v: &StateVector) -> Result<StateVector> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch { expected: u.dim(), found: v.dim() });
    }
    Ok(StateVector::from_raw(u.apply_slice(v.amplitudes())))
}

/// Haar-like random unitary: Gram-Schmidt on a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> UnitaryOp {
    loop {
        let cols: Vec<Vec<C64>> = (0..dim)
            .map(|_| {
                (0..dim)
                    .map(|_| {
                        let re: f64 = StandardNormal.sample(rng);
                        let im: f64 = StandardNormal.sample(rng);
                        C64::new(re, im)
                    })
                    .collect()
            })
            .collect();
        let q = orthonormalize(cols, 1e-8);
        if q.len() == dim {
            let sparse = q
                .into_iter()
                .map(|c| c.into_iter().enumerate().collect())
                .collect();
            return UnitaryOp::from_columns(dim, sparse).expect("orthonormal columns");
        }
    }
}
