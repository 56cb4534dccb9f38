//! The single-qubit codes and the two ways of combining them.

use std::f64::consts::FRAC_1_SQRT_2;

use super::scheme::{QracScheme, RandomAccessCode};
use crate::error::{Error, Result};
use crate::linalg::{tensor, Projector, StateVector, C64, ZERO};

/// Cap on the size of a combined randomness domain.
const RANDOMNESS_LIMIT: usize = 1 << 12;
/// Cap on the qubit count of a combined code.
const QUBIT_LIMIT: usize = 24;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn ray(v: Vec<C64>) -> Projector {
    Projector::span(v.len(), vec![v]).expect("unit vector")
}

/// The 2→1 code: `x1 x2` is sent to the normalized sum `u_{x1} ± v_{x2}`
/// of a standard-basis vector and a Hadamard-basis vector, with the sign
/// chosen so the two overlap positively. The codeword then bisects the two
/// rays and each bit is recovered with probability `cos²(π/8)`.
pub fn qrac_2to1() -> QracScheme {
    let s = FRAC_1_SQRT_2;
    let u = [[c(1.0), ZERO], [ZERO, c(1.0)]];
    let v = [[c(s), c(s)], [c(-s), c(s)]];
    let codewords = (0..4)
        .map(|x| {
            let (a, b) = (u[x >> 1], v[x & 1]);
            // u0 + v1 alone lands at 67.5°, on the wrong side of the u basis
            let sign = if (a[0] * b[0] + a[1] * b[1]).re < 0.0 { -1.0 } else { 1.0 };
            vec![StateVector::normalized(vec![a[0] + sign * b[0], a[1] + sign * b[1]]).expect("nonzero")]
        })
        .collect();
    let decoders = vec![ray(u[1].to_vec()), ray(v[1].to_vec())];
    QracScheme::new(2, 1, 0, vec![1.0], codewords, decoders).expect("valid 2->1 code")
}

/// The 3→1 code: `x1 x2 x3` is sent to the qubit whose Bloch vector is
/// `((-1)^x1, (-1)^x2, (-1)^x3) / √3`; decoder `i` measures spin along axis
/// `i` and reads 1 on the negative half. Every bit succeeds with
/// probability `(1 + 1/√3) / 2`.
pub fn qrac_3to1() -> QracScheme {
    let sign = |x: usize, k: usize| if (x >> (2 - k)) & 1 == 1 { -1.0 } else { 1.0 };
    let codewords = (0..8)
        .map(|x| {
            let b = [sign(x, 0), sign(x, 1), sign(x, 2)].map(|t| t / 3f64.sqrt());
            let theta = b[2].acos();
            let phi = b[1].atan2(b[0]);
            let amps = vec![c((theta / 2.0).cos()), C64::from_polar((theta / 2.0).sin(), phi)];
            vec![StateVector::new(amps).expect("unit Bloch vector")]
        })
        .collect();
    let s = FRAC_1_SQRT_2;
    let decoders = vec![
        ray(vec![c(s), c(-s)]),
        ray(vec![c(s), C64::new(0.0, -s)]),
        ray(vec![ZERO, c(1.0)]),
    ];
    QracScheme::new(3, 1, 0, vec![1.0], codewords, decoders).expect("valid 3->1 code")
}

/// Product randomness of `k` independent copies, in lexicographic order.
fn product_randomness(weights: &[f64], k: usize) -> Result<(Vec<f64>, Vec<Vec<usize>>)> {
    let total = weights
        .len()
        .checked_pow(k as u32)
        .filter(|t| *t <= RANDOMNESS_LIMIT)
        .ok_or_else(|| Error::TooLarge { what: "combined randomness domain".into(), limit: RANDOMNESS_LIMIT })?;
    let mut tuples = Vec::with_capacity(total);
    let mut out_w = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = idx % weights.len();
            idx /= weights.len();
        }
        out_w.push(t.iter().map(|&r| weights[r]).product());
        tuples.push(t);
    }
    Ok((out_w, tuples))
}

fn tensor_all<'a>(parts: impl IntoIterator<Item = &'a StateVector>) -> StateVector {
    let mut it = parts.into_iter();
    let first = it.next().expect("at least one factor").clone();
    it.fold(first, |acc, v| tensor(&acc, v))
}

/// Maps the natural layout `[c1 a1 c2 a2 ...]` of `k` decoder blocks onto
/// the combined register `[c1 ... ck a1 ... ak]`.
fn interleave(k: usize, n: usize, l: usize) -> Vec<usize> {
    let mut perm = Vec::with_capacity(k * (n + l));
    for b in 0..k {
        for o in 0..n + l {
            perm.push(if o < n { b * n + o } else { k * n + b * l + (o - n) });
        }
    }
    perm
}

fn check_qubits(k: usize, s: &QracScheme) -> Result<()> {
    if k * (s.n() + s.ancilla()) > QUBIT_LIMIT {
        return Err(Error::TooLarge { what: format!("{k} copies of a {}-qubit code", s.n()), limit: QUBIT_LIMIT });
    }
    Ok(())
}

/// `k` independent blocks side by side: a `(k·m, k·n)` code whose bit `j`
/// is bit `j mod m` of block `j / m`.
pub fn tensor_power(s: &QracScheme, k: usize) -> Result<QracScheme> {
    if k == 0 {
        return Err(Error::InvalidParameter("tensor power needs k ≥ 1".into()));
    }
    check_qubits(k, s)?;
    let (m, n, l) = (s.m(), s.n(), s.ancilla());
    if k * m >= usize::BITS as usize {
        return Err(Error::TooLarge { what: "combined bit count".into(), limit: usize::BITS as usize - 1 });
    }
    let (weights, tuples) = product_randomness(s.weights(), k)?;
    let block_mask = (1usize << m) - 1;
    let codewords = (0..1usize << (k * m))
        .map(|x| {
            tuples
                .iter()
                .map(|rs| {
                    tensor_all(rs.iter().enumerate().map(|(b, &r)| {
                        s.codeword((x >> ((k - 1 - b) * m)) & block_mask, r)
                    }))
                })
                .collect()
        })
        .collect();
    let block = 1usize << (n + l);
    let perm = interleave(k, n, l);
    let decoders = (0..k * m)
        .map(|j| {
            let (b, i) = (j / m, j % m);
            let p = Projector::embedded(
                block.pow(b as u32),
                s.decoder_projector(i).clone(),
                block.pow((k - 1 - b) as u32),
            );
            if l == 0 { Ok(p) } else { Projector::permuted(perm.clone(), p) }
        })
        .collect::<Result<Vec<_>>>()?;
    QracScheme::new(k * m, k * n, k * l, weights, codewords, decoders)
}

/// `t` independent copies of every codeword, decoded by majority vote.
pub fn amplify(s: &QracScheme, t: usize) -> Result<QracScheme> {
    if t % 2 == 0 {
        return Err(Error::InvalidParameter(format!("amplification needs an odd copy count, got {t}")));
    }
    check_qubits(t, s)?;
    let (m, n, l) = (s.m(), s.n(), s.ancilla());
    let (weights, tuples) = product_randomness(s.weights(), t)?;
    let codewords = (0..1usize << m)
        .map(|x| {
            tuples
                .iter()
                .map(|rs| tensor_all(rs.iter().map(|&r| s.codeword(x, r))))
                .collect()
        })
        .collect();
    let perm = interleave(t, n, l);
    let decoders = (0..m)
        .map(|i| {
            let p = Projector::majority(t, s.decoder_projector(i).clone())?;
            if l == 0 { Ok(p) } else { Projector::permuted(perm.clone(), p) }
        })
        .collect::<Result<Vec<_>>>()?;
    QracScheme::new(m, t * n, t * l, weights, codewords, decoders)
}
