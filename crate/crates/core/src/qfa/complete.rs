//! Completing partial transition maps to full unitaries.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{UnitaryOp, C64};

/// Extends an injective partial map `partial[j] = Some(image)` to a
/// permutation, sending unmapped sources to unused targets in increasing
/// order.
pub fn complete_permutation(partial: &[Option<usize>]) -> Result<UnitaryOp> {
    let dim = partial.len();
    let mut used = vec![false; dim];
    for &t in partial.iter().flatten() {
        if t >= dim || std::mem::replace(&mut used[t], true) {
            return Err(Error::NotEmbeddable(format!("transition target {t} is hit twice or out of range")));
        }
    }
    let mut free = (0..dim).filter(|&t| !used[t]);
    let perm: Vec<usize> = partial
        .iter()
        .map(|p| p.unwrap_or_else(|| free.next().expect("counts match")))
        .collect();
    UnitaryOp::from_permutation(&perm)
}

/// Sparse vectors with a row index, for Gram-Schmidt against many columns.
struct Span {
    vectors: Vec<Vec<(usize, C64)>>,
    by_row: HashMap<usize, Vec<(usize, C64)>>,
}

impl Span {
    fn push(&mut self, v: Vec<(usize, C64)>) {
        let id = self.vectors.len();
        for &(r, z) in &v {
            self.by_row.entry(r).or_default().push((id, z));
        }
        self.vectors.push(v);
    }

    /// One Gram-Schmidt pass of `v` against the span.
    fn reduce(&self, v: &HashMap<usize, C64>) -> HashMap<usize, C64> {
        let mut coeff: HashMap<usize, C64> = HashMap::new();
        for (r, z) in v {
            for (id, w) in self.by_row.get(r).into_iter().flatten() {
                *coeff.entry(*id).or_default() += w.conj() * z;
            }
        }
        let mut out = v.clone();
        for (id, c) in coeff {
            if c.norm_sqr() == 0.0 {
                continue;
            }
            for &(r, w) in &self.vectors[id] {
                *out.entry(r).or_default() -= c * w;
            }
        }
        out
    }
}

/// Extends an isometry given on some basis vectors (`partial[j]` is the
/// image column of `|j⟩`) to a unitary. Each missing column takes the next
/// standard basis vector, in index order, whose component orthogonal to
/// everything chosen so far is non-negligible.
pub fn complete_isometry(dim: usize, partial: Vec<Option<Vec<(usize, C64)>>>) -> Result<UnitaryOp> {
    if partial.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: partial.len() });
    }
    let mut span = Span { vectors: Vec::new(), by_row: HashMap::new() };
    for col in partial.iter().flatten() {
        span.push(col.clone());
    }
    let mut candidate = 0usize;
    let mut cols = Vec::with_capacity(dim);
    for col in partial {
        if let Some(c) = col {
            cols.push(c);
            continue;
        }
        let fresh = loop {
            if candidate >= dim {
                return Err(Error::NotUnitary { deviation: 1.0 });
            }
            let e: HashMap<usize, C64> = [(candidate, C64::new(1.0, 0.0))].into();
            candidate += 1;
            let r = span.reduce(&span.reduce(&e));
            let norm = r.values().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                let mut v: Vec<(usize, C64)> =
                    r.into_iter().filter(|(_, z)| z.norm() > 1e-15).map(|(k, z)| (k, z / norm)).collect();
                v.sort_by_key(|(k, _)| *k);
                break v;
            }
        };
        span.push(fresh.clone());
        cols.push(fresh);
    }
    UnitaryOp::from_columns(dim, cols)
}
