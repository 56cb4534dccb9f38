#![allow(dead_code)]

pub mod cli_cases;

use std::collections::BTreeMap;

use qrac_lab::linalg::{random_unitary, Projector, StateVector, UnitaryOp, C64};
use qrac_lab::qfa::{Qfa, StateKind, CENT, DOLLAR};
use qrac_lab::qrac::QracScheme;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn column(u: &UnitaryOp, j: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); u.dim()];
    for &(r, z) in u.column(j) {
        v[r] = z;
    }
    v
}

pub fn random_state(dim: usize, rng: &mut ChaCha8Rng) -> StateVector {
    let u = random_unitary(dim, rng);
    StateVector::new(column(&u, 0)).unwrap()
}

/// Random code on `n` qubits with `r` randomness values and random
/// projective decoders.
pub fn random_scheme(m: usize, n: usize, r: usize, seed: u64) -> QracScheme {
    let mut g = rng(seed);
    let dim = 1 << n;
    let raw: Vec<f64> = (0..r).map(|_| g.random_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let weights = raw.iter().map(|w| w / total).collect();
    let codewords = (0..1usize << m).map(|_| (0..r).map(|_| random_state(dim, &mut g)).collect()).collect();
    let decoders = (0..m)
        .map(|_| {
            let u = random_unitary(dim, &mut g);
            let k = g.random_range(1..dim.max(2));
            Projector::span(dim, (0..k.min(dim)).map(|j| column(&u, j)).collect()).unwrap()
        })
        .collect();
    QracScheme::new(m, n, 0, weights, codewords, decoders).unwrap()
}

/// Random QFA over {a, b} with Haar-like unitaries.
pub fn random_qfa(k: usize, seed: u64) -> Qfa {
    let mut g = rng(seed);
    let names = (0..k).map(|i| format!("q{i}")).collect();
    let mut kinds = vec![StateKind::NonHalting; k];
    for kind in kinds.iter_mut().skip(1) {
        *kind = match g.random_range(0..3) {
            0 => StateKind::Accept,
            1 => StateKind::Reject,
            _ => StateKind::NonHalting,
        };
    }
    let mut u = BTreeMap::new();
    for c in [CENT, DOLLAR, 'a', 'b'] {
        u.insert(c, random_unitary(k, &mut g));
    }
    Qfa::new(names, kinds, 0, vec!['a', 'b'], u).unwrap()
}

/// Every word over `alphabet` of length at most `max_len`.
pub fn words(alphabet: &[char], max_len: usize) -> Vec<String> {
    let mut all = vec![String::new()];
    let mut level = vec![String::new()];
    for _ in 0..max_len {
        level = level.iter().flat_map(|w| alphabet.iter().map(move |c| format!("{w}{c}"))).collect();
        all.extend(level.iter().cloned());
    }
    all
}
