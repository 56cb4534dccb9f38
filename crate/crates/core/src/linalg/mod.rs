//! Complex linear algebra for encodings and automaton states.
//!
//! Amplitudes are `Complex64`. Multi-qubit registers use the convention that
//! the leftmost qubit is the most significant bit of the amplitude index, so
//! `|1> ⊗ |0>` is basis vector 2 of a 4-dimensional space.
//!
//! Every tolerance defaults to [`TOL`] and can be overridden by the
//! `*_with_tolerance` constructors.

mod density;
mod measurement;
mod projector;
mod state;
mod unitary;

pub use density::{von_neumann_entropy, DensityMatrix};
pub use measurement::{l1_distance, measure, OutcomeDistribution, ProjectiveMeasurement};
pub use projector::Projector;
pub use state::{tensor, StateVector};
pub use unitary::{apply, random_unitary, UnitaryOp};

pub use num_complex::Complex64 as C64;

/// Default numerical tolerance for invariant checks.
pub const TOL: f64 = 1e-9;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

pub(crate) fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// `<a|b>`, conjugate-linear in `a`.
pub(crate) fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn kron(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        out.extend(b.iter().map(|y| x * y));
    }
    out
}

pub(crate) fn distance(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Pads a code register with `ancilla` zero qubits on the right.
pub(crate) fn with_zero_ancilla(v: &[C64], ancilla: usize) -> Vec<C64> {
    if ancilla == 0 {
        return v.to_vec();
    }
    let stride = 1usize << ancilla;
    let mut out = vec![ZERO; v.len() * stride];
    for (k, z) in v.iter().enumerate() {
        out[k * stride] = *z;
    }
    out
}

/// Orthonormalizes `vectors` in order with two-pass modified Gram-Schmidt,
/// dropping any vector whose residual norm falls below `tol`.
pub fn orthonormalize(vectors: impl IntoIterator<Item = Vec<C64>>, tol: f64) -> Vec<Vec<C64>> {
    orthonormalize_against(&[], vectors, tol)
}

pub(crate) fn orthonormalize_against(
    fixed: &[Vec<C64>],
    vectors: impl IntoIterator<Item = Vec<C64>>,
    tol: f64,
) -> Vec<Vec<C64>> {
    let mut out: Vec<Vec<C64>> = Vec::new();
    for mut v in vectors {
        for _pass in 0..2 {
            for b in fixed.iter().chain(out.iter()) {
                let c = inner(b, &v);
                if c != ZERO {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x -= c * y;
                    }
                }
            }
        }
        let norm = norm_sqr(&v).sqrt();
        if norm > tol {
            v.iter_mut().for_each(|z| *z /= norm);
            out.push(v);
        }
    }
    out
}

/// Orthonormal basis of the orthogonal complement of span(`basis`) in
/// `C^dim`, built by Gram-Schmidt over the standard basis in index order.
pub fn orthogonal_complement(dim: usize, basis: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let want = dim.saturating_sub(basis.len());
    let mut out = Vec::with_capacity(want);
    for k in 0..dim {
        if out.len() == want {
            break;
        }
        let mut e = vec![ZERO; dim];
        e[k] = ONE;
        let mut fixed = basis.to_vec();
        fixed.extend(out.iter().cloned());
        out.extend(orthonormalize_against(&fixed, [e], 1e-6));
    }
    out
}

/// Reorders the qubits of a `2^qubits`-dimensional vector: qubit `k` of the
/// result is qubit `perm[k]` of `v`.
pub(crate) fn gather_qubits(v: &[C64], perm: &[usize]) -> Vec<C64> {
    let q = perm.len();
    let mut out = vec![ZERO; v.len()];
    for (o, z) in v.iter().enumerate() {
        out[permuted_index(o, perm, q)] = *z;
    }
    out
}

/// Inverse of [`gather_qubits`].
pub(crate) fn scatter_qubits(w: &[C64], perm: &[usize]) -> Vec<C64> {
    let q = perm.len();
    let mut out = vec![ZERO; w.len()];
    for (o, z) in out.iter_mut().enumerate() {
        *z = w[permuted_index(o, perm, q)];
    }
    out
}

fn permuted_index(outer: usize, perm: &[usize], q: usize) -> usize {
    perm.iter().enumerate().fold(0usize, |acc, (k, &src)| {
        let b = (outer >> (q - 1 - src)) & 1;
        acc | (b << (q - 1 - k))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_spans_the_rest() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let b = vec![vec![C64::new(s, 0.0), C64::new(s, 0.0)]];
        let c = orthogonal_complement(2, &b);
        assert_eq!(c.len(), 1);
        assert!(inner(&b[0], &c[0]).norm() < 1e-12);
        assert!((norm_sqr(&c[0]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn qubit_gather_roundtrip() {
        let v: Vec<C64> = (0..8).map(|k| C64::new(k as f64, 0.0)).collect();
        // swap qubit 0 and qubit 2
        let g = gather_qubits(&v, &[2, 1, 0]);
        assert_eq!(g[0b001], C64::new(4.0, 0.0));
        assert_eq!(scatter_qubits(&g, &[2, 1, 0]), v);
        let g = gather_qubits(&v, &[1, 2, 0]);
        assert_eq!(scatter_qubits(&g, &[1, 2, 0]), v);
    }
}
