use std::sync::Arc;

use super::{gather_qubits, inner, norm_sqr, orthonormalize, scatter_qubits, UnitaryOp, C64, TOL, ZERO};
use crate::error::{Error, Result};

/// An orthogonal projector onto a subspace of `C^dim`, kept in factored form.
///
/// Decoders of tensored and amplified codes live on spaces of up to
/// `2^15` dimensions but have a product structure; storing that structure
/// keeps application linear in the dimension. [`Projector::to_basis`]
/// materializes an explicit orthonormal basis when one is needed.
#[derive(Clone, Debug)]
pub struct Projector {
    dim: usize,
    kind: Kind,
}

#[derive(Clone, Debug)]
enum Kind {
    /// Span of an orthonormal family.
    Span(Arc<Vec<Vec<C64>>>),
    /// `I_before ⊗ P ⊗ I_after`.
    Embedded { before: usize, inner: Arc<Projector>, after: usize },
    /// Span of the product outcomes in which a majority of `copies` blocks
    /// land in the block projector's range.
    Majority { copies: usize, block: Arc<Projector> },
    /// `Π P Π⁻¹` for a qubit reordering `Π`.
    Permuted { perm: Arc<Vec<usize>>, inner: Arc<Projector> },
    /// `V† D V` where `V` applies `ops` in order and `D` keeps basis states
    /// flagged in `keep`.
    Conjugated { ops: Arc<Vec<(Arc<UnitaryOp>, Arc<UnitaryOp>)>>, keep: Arc<Vec<bool>> },
}

impl Projector {
    /// Projector onto the span of an orthonormal family.
    pub fn span(dim: usize, basis: Vec<Vec<C64>>) -> Result<Self> {
        for v in &basis {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
        }
        for (a, u) in basis.iter().enumerate() {
            for (b, v) in basis.iter().enumerate().skip(a) {
                let want = if a == b { 1.0 } else { 0.0 };
                if (inner(u, v) - C64::new(want, 0.0)).norm() > TOL {
                    return Err(Error::InvalidMeasurement(
                        "subspace basis is not orthonormal".into(),
                    ));
                }
            }
        }
        Ok(Projector { dim, kind: Kind::Span(Arc::new(basis)) })
    }

    /// Projector onto the standard basis states `indices`.
    pub fn coordinates(dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut keep = vec![false; dim];
        for k in indices {
            keep[k] = true;
        }
        Projector {
            dim,
            kind: Kind::Conjugated { ops: Arc::new(Vec::new()), keep: Arc::new(keep) },
        }
    }

    pub fn embedded(before: usize, inner: Projector, after: usize) -> Self {
        Projector {
            dim: before * inner.dim * after,
            kind: Kind::Embedded { before, inner: Arc::new(inner), after },
        }
    }

    /// Majority-vote projector over `copies` (odd) tensor copies of `block`.
    pub fn majority(copies: usize, block: Projector) -> Result<Self> {
        if copies % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "majority needs an odd number of copies, got {copies}"
            )));
        }
        let dim = checked_pow(block.dim, copies)?;
        Ok(Projector { dim, kind: Kind::Majority { copies, block: Arc::new(block) } })
    }

    /// Acts as `inner` after reordering qubits so that inner qubit `k` is
    /// outer qubit `perm[k]`.
    pub fn permuted(perm: Vec<usize>, inner: Projector) -> Result<Self> {
        if inner.dim != 1usize << perm.len() {
            return Err(Error::DimensionMismatch { expected: 1 << perm.len(), found: inner.dim });
        }
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(Projector {
            dim: inner.dim,
            kind: Kind::Permuted { perm: Arc::new(perm), inner: Arc::new(inner) },
        })
    }

    /// `V† D V` with `V = ops[last] ⋯ ops[0]` and `D` the coordinate
    /// projector onto `keep`.
    pub fn conjugated(ops: Vec<Arc<UnitaryOp>>, keep: Vec<bool>) -> Result<Self> {
        let dim = keep.len();
        if let Some(u) = ops.iter().find(|u| u.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: u.dim() });
        }
        let ops = ops
            .into_iter()
            .map(|u| {
                let adj = Arc::new(u.adjoint());
                (u, adj)
            })
            .collect();
        Ok(Projector { dim, kind: Kind::Conjugated { ops: Arc::new(ops), keep: Arc::new(keep) } })
    }

    /// Like [`Projector::conjugated`] with each op paired with its adjoint,
    /// so that many projectors can share one copy of each.
    pub(crate) fn conjugated_pairs(
        ops: Vec<(Arc<UnitaryOp>, Arc<UnitaryOp>)>,
        keep: Vec<bool>,
    ) -> Result<Self> {
        let dim = keep.len();
        if let Some((u, _)) = ops.iter().find(|(u, a)| u.dim() != dim || a.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: u.dim() });
        }
        Ok(Projector { dim, kind: Kind::Conjugated { ops: Arc::new(ops), keep: Arc::new(keep) } })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the range.
    pub fn rank(&self) -> usize {
        match &self.kind {
            Kind::Span(b) => b.len(),
            Kind::Embedded { before, inner, after } => before * after * inner.rank(),
            Kind::Majority { copies, block } => {
                let (r, d, t) = (block.rank(), block.dim, *copies);
                (t.div_ceil(2)..=t)
                    .map(|k| binomial(t, k) * r.pow(k as u32) * (d - r).pow((t - k) as u32))
                    .sum()
            }
            Kind::Permuted { inner, .. } => inner.rank(),
            Kind::Conjugated { keep, .. } => keep.iter().filter(|&&k| k).count(),
        }
    }

    /// The explicit basis when this projector was built from one.
    pub fn span_basis(&self) -> Option<&[Vec<C64>]> {
        match &self.kind {
            Kind::Span(b) => Some(b),
            _ => None,
        }
    }

    /// `P v`.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim, "projector dimension mismatch");
        match &self.kind {
            Kind::Span(basis) => {
                let mut out = vec![ZERO; self.dim];
                for b in basis.iter() {
                    let c = inner(b, v);
                    for (o, x) in out.iter_mut().zip(b) {
                        *o += c * x;
                    }
                }
                out
            }
            Kind::Embedded { before, inner, after } => apply_embedded(inner, *before, *after, v),
            Kind::Majority { copies, block } => apply_majority(block, *copies, v),
            Kind::Permuted { perm, inner } => {
                scatter_qubits(&inner.apply(&gather_qubits(v, perm)), perm)
            }
            Kind::Conjugated { ops, keep } => {
                let mut w = v.to_vec();
                for (u, _) in ops.iter() {
                    w = u.apply_slice(&w);
                }
                w.iter_mut().zip(keep.iter()).for_each(|(z, &k)| {
                    if !k {
                        *z = ZERO
                    }
                });
                for (_, adj) in ops.iter().rev() {
                    w = adj.apply_slice(&w);
                }
                w
            }
        }
    }

    /// `‖P v‖²`.
    pub fn prob(&self, v: &[C64]) -> f64 {
        assert_eq!(v.len(), self.dim, "projector dimension mismatch");
        match &self.kind {
            Kind::Span(basis) => basis.iter().map(|b| inner(b, v).norm_sqr()).sum(),
            Kind::Permuted { perm, inner } => inner.prob(&gather_qubits(v, perm)),
            Kind::Conjugated { ops, keep } => {
                let mut w = v.to_vec();
                for (u, _) in ops.iter() {
                    w = u.apply_slice(&w);
                }
                w.iter().zip(keep.iter()).filter(|(_, &k)| k).map(|(z, _)| z.norm_sqr()).sum()
            }
            _ => norm_sqr(&self.apply(v)),
        }
    }

    /// Orthonormal basis of the range, from the columns `P e_k`.
    pub fn to_basis(&self) -> Result<Vec<Vec<C64>>> {
        if let Some(b) = self.span_basis() {
            return Ok(b.to_vec());
        }
        const LIMIT: usize = 1 << 12;
        if self.dim > LIMIT {
            return Err(Error::TooLarge { what: "projector materialization".into(), limit: LIMIT });
        }
        let rank = self.rank();
        let mut basis = Vec::with_capacity(rank);
        for k in 0..self.dim {
            if basis.len() == rank {
                break;
            }
            let mut e = vec![ZERO; self.dim];
            e[k] = C64::new(1.0, 0.0);
            let col = self.apply(&e);
            if norm_sqr(&col) > 1e-12 {
                let mut fixed = std::mem::take(&mut basis);
                let added = super::orthonormalize_against(&fixed, [col], 1e-6);
                fixed.extend(added);
                basis = fixed;
            }
        }
        if basis.len() != rank {
            // fall back to a full pass if the early exit missed directions
            basis = orthonormalize(
                (0..self.dim).map(|k| {
                    let mut e = vec![ZERO; self.dim];
                    e[k] = C64::new(1.0, 0.0);
                    self.apply(&e)
                }),
                1e-6,
            );
        }
        Ok(basis)
    }
}

fn apply_embedded(inner: &Projector, before: usize, after: usize, v: &[C64]) -> Vec<C64> {
    let id = inner.dim;
    match &inner.kind {
        Kind::Embedded { before: b2, inner: i2, after: a2 } => {
            apply_embedded(i2, before * b2, a2 * after, v)
        }
        Kind::Span(basis) => {
            let mut out = vec![ZERO; v.len()];
            let mut coeff = vec![ZERO; basis.len()];
            for b in 0..before {
                let base = b * id * after;
                for a in 0..after {
                    for (c, vec) in coeff.iter_mut().zip(basis.iter()) {
                        *c = vec
                            .iter()
                            .enumerate()
                            .map(|(k, x)| x.conj() * v[base + k * after + a])
                            .sum();
                    }
                    for (c, vec) in coeff.iter().zip(basis.iter()) {
                        if *c == ZERO {
                            continue;
                        }
                        for (k, x) in vec.iter().enumerate() {
                            out[base + k * after + a] += c * x;
                        }
                    }
                }
            }
            out
        }
        _ => {
            let mut out = vec![ZERO; v.len()];
            let mut slice = vec![ZERO; id];
            for b in 0..before {
                let base = b * id * after;
                for a in 0..after {
                    for (k, s) in slice.iter_mut().enumerate() {
                        *s = v[base + k * after + a];
                    }
                    for (k, z) in inner.apply(&slice).into_iter().enumerate() {
                        out[base + k * after + a] = z;
                    }
                }
            }
            out
        }
    }
}

/// Splits `v` copy by copy into "block outcome 1" and "block outcome 0"
/// parts, merging branches by their running count of ones. Branches whose
/// majority is already decided stop splitting, since the remaining
/// per-copy projectors sum to the identity.
fn apply_majority(block: &Projector, copies: usize, v: &[C64]) -> Vec<C64> {
    let bd = block.dim;
    let threshold = copies.div_ceil(2);
    let mut decided = vec![ZERO; v.len()];
    let mut branches: Vec<Option<Vec<C64>>> = vec![Some(v.to_vec())];
    for c in 0..copies {
        let before = bd.pow(c as u32);
        let after = bd.pow((copies - 1 - c) as u32);
        let remaining = copies - c;
        let mut next: Vec<Option<Vec<C64>>> = vec![None; branches.len() + 1];
        for (ones, branch) in branches.into_iter().enumerate() {
            let Some(x) = branch else { continue };
            if ones >= threshold {
                decided.iter_mut().zip(&x).for_each(|(d, z)| *d += z);
                continue;
            }
            if ones + remaining < threshold {
                continue;
            }
            let p1 = apply_embedded(block, before, after, &x);
            let p0: Vec<C64> = x.iter().zip(&p1).map(|(a, b)| a - b).collect();
            accumulate(&mut next[ones], p0);
            accumulate(&mut next[ones + 1], p1);
        }
        branches = next;
    }
    for (ones, branch) in branches.into_iter().enumerate() {
        if let (true, Some(x)) = (ones >= threshold, branch) {
            decided.iter_mut().zip(&x).for_each(|(d, z)| *d += z);
        }
    }
    decided
}

fn accumulate(slot: &mut Option<Vec<C64>>, v: Vec<C64>) {
    match slot {
        Some(acc) => acc.iter_mut().zip(&v).for_each(|(a, b)| *a += b),
        None => *slot = Some(v),
    }
}

fn checked_pow(base: usize, exp: usize) -> Result<usize> {
    base.checked_pow(exp as u32)
        .filter(|&d| d <= 1 << 24)
        .ok_or_else(|| Error::TooLarge { what: "projector dimension".into(), limit: 1 << 24 })
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, j| acc * (n - j) / (j + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn one_qubit_one() -> Projector {
        Projector::span(2, vec![vec![ZERO, C64::new(1.0, 0.0)]]).unwrap()
    }

    fn dense_matrix(p: &Projector) -> Vec<Vec<C64>> {
        (0..p.dim())
            .map(|k| {
                let mut e = vec![ZERO; p.dim()];
                e[k] = C64::new(1.0, 0.0);
                p.apply(&e)
            })
            .collect()
    }

    #[test]
    fn majority_of_three_bits() {
        // brute force: basis state b1b2b3 is in the range iff it has >= 2 ones
        let p = Projector::majority(3, one_qubit_one()).unwrap();
        let cols = dense_matrix(&p);
        for (k, col) in cols.iter().enumerate() {
            let want = if (k as u32).count_ones() >= 2 { 1.0 } else { 0.0 };
            for (r, z) in col.iter().enumerate() {
                let w = if r == k { want } else { 0.0 };
                assert!((z - C64::new(w, 0.0)).norm() < 1e-15);
            }
        }
        assert_eq!(p.rank(), 4);
        assert_eq!(p.to_basis().unwrap().len(), 4);
        assert!(Projector::majority(2, one_qubit_one()).is_err());
    }

    #[test]
    fn majority_is_idempotent_for_rotated_block() {
        let s = FRAC_1_SQRT_2;
        let block = Projector::span(2, vec![vec![C64::new(-s, 0.0), C64::new(s, 0.0)]]).unwrap();
        let p = Projector::majority(5, block).unwrap();
        let v: Vec<C64> = (0..32).map(|k| C64::new((k as f64).sin(), (k as f64).cos())).collect();
        let pv = p.apply(&v);
        let ppv = p.apply(&pv);
        assert!(super::super::distance(&pv, &ppv) < 1e-12);
        assert!((p.prob(&v) - norm_sqr(&pv)).abs() < 1e-12);
    }

    #[test]
    fn embedded_and_permuted() {
        // I ⊗ P1 on two qubits, versus P1 ⊗ I with qubits swapped
        let a = Projector::embedded(2, one_qubit_one(), 1);
        let b = Projector::permuted(vec![1, 0], Projector::embedded(1, one_qubit_one(), 2)).unwrap();
        assert_eq!(dense_matrix(&a), dense_matrix(&b));
        assert_eq!(a.rank(), 2);
        // nested embeddings flatten
        let c = Projector::embedded(2, Projector::embedded(1, one_qubit_one(), 2), 1);
        assert_eq!(c.dim(), 8);
        let v: Vec<C64> = (0..8).map(|k| C64::new(k as f64, 0.0)).collect();
        let pv = c.apply(&v);
        for (k, z) in pv.iter().enumerate() {
            let keep = (k >> 1) & 1 == 1;
            assert_eq!(*z, if keep { v[k] } else { ZERO });
        }
    }

    #[test]
    fn conjugated_by_swap() {
        let swap = Arc::new(UnitaryOp::from_permutation(&[1, 0]).unwrap());
        let p = Projector::conjugated(vec![swap], vec![false, true]).unwrap();
        // swap† |1><1| swap = |0><0|
        let v = vec![C64::new(0.6, 0.0), C64::new(0.8, 0.0)];
        assert!((p.prob(&v) - 0.36).abs() < 1e-15);
        assert_eq!(p.apply(&v), vec![C64::new(0.6, 0.0), ZERO]);
    }
}
