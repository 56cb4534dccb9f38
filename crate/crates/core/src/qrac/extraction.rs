//! Deferred-measurement extraction of every bit from one codeword.
//!
//! Each decoder becomes a unitary `U_i` on codeword ⊗ ancilla ⊗ answer that
//! flips answer bit `i` on the decoder's outcome-1 subspace. The joint state
//! is kept as one vector per answer-register value, which is exact and
//! touches only the answer values that actually carry amplitude.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::scheme::{success_probability, RandomAccessCode};
use crate::bits::{bit, ceil_log2, mask};
use crate::error::{Error, Result};
use crate::linalg::{norm_sqr, OutcomeDistribution, C64};

/// Largest simulated register, in qubits.
pub const QUBIT_LIMIT: usize = 22;

/// Order in which the flip unitaries act.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExtractionOrder {
    /// Bit 1 first.
    #[default]
    Forward,
    /// Bit `m` first, so the answer register holds each decoder's suffix.
    Reverse,
}

/// Result of extracting all bits of one string.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub x: usize,
    pub m: usize,
    /// Distribution of the measured answer register.
    pub distribution: OutcomeDistribution,
    /// Probability that the answer differs from `x`.
    pub failure: f64,
    /// Distance between the final state and the ideal `|φ_x, 0, x⟩`, with
    /// the encoder randomness purified into a reference register.
    pub hybrid_distance: f64,
    /// Per-bit error of the scheme.
    pub epsilon: f64,
}

impl Extraction {
    /// `2m√ε`, the bound on [`Extraction::hybrid_distance`].
    pub fn distance_bound(&self) -> f64 {
        2.0 * self.m as f64 * self.epsilon.sqrt()
    }

    /// `4m√ε`, the bound on [`Extraction::failure`].
    pub fn failure_bound(&self) -> f64 {
        4.0 * self.m as f64 * self.epsilon.sqrt()
    }
}

/// A scheme prepared for repeated extraction runs.
pub struct Extractor<'a, S: RandomAccessCode + ?Sized> {
    scheme: &'a S,
    epsilon: f64,
    order: ExtractionOrder,
}

impl<'a, S: RandomAccessCode + ?Sized> Extractor<'a, S> {
    /// Measures the scheme's per-bit error exactly. Serial schemes must use
    /// [`ExtractionOrder::Reverse`].
    pub fn new(scheme: &'a S, order: ExtractionOrder) -> Result<Self> {
        let qubits = ceil_log2(scheme.code_dim()) + scheme.ancilla_qubits() + scheme.bits();
        if qubits > QUBIT_LIMIT {
            return Err(Error::TooLarge { what: format!("{qubits}-qubit extraction register"), limit: QUBIT_LIMIT });
        }
        if scheme.suffix_dependent() && order != ExtractionOrder::Reverse {
            return Err(Error::InvalidParameter(
                "serial decoders need the suffix in the answer register; use reverse order".into(),
            ));
        }
        let epsilon = success_probability(scheme)?.epsilon();
        Ok(Extractor { scheme, epsilon, order })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn run(&self, x: usize) -> Result<Extraction> {
        let s = self.scheme;
        let m = s.bits();
        if x >> m != 0 {
            return Err(Error::InvalidParameter(format!("{x} is not an {m}-bit string")));
        }
        let mut probs: BTreeMap<usize, f64> = BTreeMap::new();
        let mut hybrid2 = 0.0;
        for (r, &w) in s.weights().iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            let start = s.extended_codeword(x, r);
            let mut branches: Vec<Option<Vec<C64>>> = vec![None; 1 << m];
            branches[0] = Some(start.clone());
            let steps: Box<dyn Iterator<Item = usize>> = match self.order {
                ExtractionOrder::Forward => Box::new(0..m),
                ExtractionOrder::Reverse => Box::new((0..m).rev()),
            };
            for i in steps {
                branches = flip_step(s, i, branches);
            }
            let mut dist2 = 0.0;
            for (a, b) in branches.iter().enumerate() {
                let Some(v) = b else { continue };
                *probs.entry(a).or_default() += w * norm_sqr(v);
                dist2 += if a == x {
                    v.iter().zip(&start).map(|(p, q)| (p - q).norm_sqr()).sum()
                } else {
                    norm_sqr(v)
                };
            }
            hybrid2 += w * dist2;
        }
        probs.retain(|_, p| *p > 0.0);
        let distribution = OutcomeDistribution::new(probs)?;
        let failure = (1.0 - distribution.get(x)).max(0.0);
        Ok(Extraction { x, m, distribution, failure, hybrid_distance: hybrid2.sqrt(), epsilon: self.epsilon })
    }

    /// Runs every `m`-bit string in parallel.
    pub fn run_all(&self) -> Result<Vec<Extraction>> {
        (0..1usize << self.scheme.bits()).into_par_iter().map(|x| self.run(x)).collect()
    }
}

/// `U_i` on the branch representation: branch `a` splits into `a` (outcome 0)
/// and `a ⊕ e_i` (outcome 1).
fn flip_step<S: RandomAccessCode + ?Sized>(s: &S, i: usize, branches: Vec<Option<Vec<C64>>>) -> Vec<Option<Vec<C64>>> {
    let flip = mask(s.bits(), i);
    let mut next: Vec<Option<Vec<C64>>> = vec![None; branches.len()];
    let add = |slot: &mut Option<Vec<C64>>, v: Vec<C64>| match slot {
        Some(acc) => acc.iter_mut().zip(v).for_each(|(a, b)| *a += b),
        None => *slot = Some(v),
    };
    for (a, b) in branches.into_iter().enumerate() {
        let Some(v) = b else { continue };
        let one = s.decoder(i, a).one.apply(&v);
        let zero: Vec<C64> = v.iter().zip(&one).map(|(p, q)| p - q).collect();
        if norm_sqr(&zero) > 0.0 {
            add(&mut next[a], zero);
        }
        if norm_sqr(&one) > 0.0 {
            add(&mut next[a ^ flip], one);
        }
    }
    next
}

/// Extracts all bits of `x`, after checking that the scheme's per-bit error
/// is at most `epsilon`.
pub fn sequential_extract<S: RandomAccessCode + ?Sized>(
    s: &S,
    x: usize,
    epsilon: f64,
    order: ExtractionOrder,
) -> Result<Extraction> {
    let ex = Extractor::new(s, order)?;
    if ex.epsilon() > epsilon + 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "scheme errs with probability {} per bit, above the stated {epsilon}",
            ex.epsilon()
        )));
    }
    ex.run(x)
}

/// `‖U_i|φ_x, a⟩ − U_i'|φ_x, a⟩‖²` on the purified encoding of `x`, where
/// `U_i'` flips answer bit `i` exactly when `x_i = 1`.
pub fn step_perturbation<S: RandomAccessCode + ?Sized>(s: &S, x: usize, i: usize, a: usize) -> f64 {
    s.weights()
        .iter()
        .enumerate()
        .filter(|(_, w)| **w > 0.0)
        .map(|(r, w)| w * branch_perturbation(s, x, r, i, a))
        .sum()
}

fn branch_perturbation<S: RandomAccessCode + ?Sized>(s: &S, x: usize, r: usize, i: usize, a: usize) -> f64 {
    let m = s.bits();
    let start = s.extended_codeword(x, r);
    let mut branches = vec![None; 1 << m];
    branches[a] = Some(start.clone());
    let out = flip_step(s, i, branches);
    let ideal = if bit(x, m, i) { a ^ mask(m, i) } else { a };
    out.iter()
        .enumerate()
        .map(|(b, v)| match (v, b == ideal) {
            (None, true) => 1.0,
            (None, false) => 0.0,
            (Some(v), true) => v.iter().zip(&start).map(|(p, q)| (p - q).norm_sqr()).sum(),
            (Some(v), false) => norm_sqr(v),
        })
        .sum()
}
