use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bits::{bit, ceil_log2, suffix_after};
use crate::error::{Error, Result};
use crate::linalg::{with_zero_ancilla, Projector, StateVector, C64, TOL};
use crate::table::SuccessTable;

/// Largest `m` for which success tables are evaluated exhaustively.
pub const EXACT_LIMIT: usize = 20;

/// A bit decoder. Outcome 1 is the range of `one`; outcome 0 is the range
/// of `zero` when given and the orthogonal complement of `one` otherwise.
/// When `zero` is given, mass outside both ranges decodes to neither bit.
#[derive(Clone, Debug)]
pub struct BinaryDecoder {
    pub one: Projector,
    pub zero: Option<Projector>,
}

impl BinaryDecoder {
    pub fn complementary(one: Projector) -> Self {
        BinaryDecoder { one, zero: None }
    }

    pub fn dim(&self) -> usize {
        self.one.dim()
    }

    /// Probability that decoding `state` yields `bit`.
    pub fn success(&self, state: &[C64], bit: bool) -> f64 {
        let p = match (bit, &self.zero) {
            (true, _) => self.one.prob(state),
            (false, Some(z)) => z.prob(state),
            (false, None) => 1.0 - self.one.prob(state),
        };
        p.clamp(0.0, 1.0)
    }
}

/// Common view of plain and serial codes.
pub trait RandomAccessCode: Sync {
    /// Number of encoded bits `m`.
    fn bits(&self) -> usize;
    /// Dimension of the codeword space.
    fn code_dim(&self) -> usize;
    /// Zero qubits appended to the codeword before decoding.
    fn ancilla_qubits(&self) -> usize;
    /// Probability of each randomness index.
    fn weights(&self) -> &[f64];
    fn codeword(&self, x: usize, r: usize) -> &StateVector;
    /// Decoder for bit `i`; serial codes select it from the bits of `x`
    /// after position `i` and ignore the rest of `x`.
    fn decoder(&self, i: usize, x: usize) -> &BinaryDecoder;

    fn suffix_dependent(&self) -> bool {
        false
    }

    /// Qubits needed to hold a codeword.
    fn qubits(&self) -> usize {
        ceil_log2(self.code_dim())
    }

    /// Codeword extended by the zero ancilla.
    fn extended_codeword(&self, x: usize, r: usize) -> Vec<C64> {
        with_zero_ancilla(self.codeword(x, r).amplitudes(), self.ancilla_qubits())
    }

    /// Exact probability that bit `i` of `x` decodes correctly, averaged
    /// over the encoder randomness.
    fn bit_success(&self, x: usize, i: usize) -> f64 {
        let m = self.bits();
        let dec = self.decoder(i, x);
        self.weights()
            .iter()
            .enumerate()
            .filter(|(_, w)| **w > 0.0)
            .map(|(r, w)| w * dec.success(&self.extended_codeword(x, r), bit(x, m, i)))
            .sum()
    }

    /// Probability that decoder `i` outputs 1 on the encoding of `x`.
    fn prob_output_one(&self, x: usize, i: usize) -> f64 {
        let dec = self.decoder(i, x);
        self.weights()
            .iter()
            .enumerate()
            .filter(|(_, w)| **w > 0.0)
            .map(|(r, w)| w * dec.success(&self.extended_codeword(x, r), true))
            .sum()
    }
}

/// Exact success probability of every `(x, i)`.
pub fn success_probability<S: RandomAccessCode + ?Sized>(s: &S) -> Result<SuccessTable> {
    let m = s.bits();
    if m > EXACT_LIMIT {
        return Err(Error::TooLarge { what: format!("exact evaluation of m = {m}"), limit: EXACT_LIMIT });
    }
    let probs: Vec<f64> = (0..1usize << m)
        .into_par_iter()
        .flat_map_iter(|x| (0..m).map(move |i| (x, i)))
        .map(|(x, i)| s.bit_success(x, i))
        .collect();
    Ok(SuccessTable::new(m, probs))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampledSuccess {
    pub samples: usize,
    pub min: f64,
    pub mean: f64,
}

/// Exact per-bit success on `samples` uniformly drawn strings, for codes
/// too large for [`success_probability`].
pub fn sampled_success<S: RandomAccessCode + ?Sized>(s: &S, samples: usize, seed: u64) -> SampledSuccess {
    let m = s.bits();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<usize> = (0..samples)
        .map(|_| rng.random_range(0..1usize << m.min(usize::BITS as usize - 1)))
        .collect();
    let vals: Vec<f64> = xs
        .par_iter()
        .flat_map_iter(|&x| (0..m).map(move |i| (x, i)))
        .map(|(x, i)| s.bit_success(x, i))
        .collect();
    let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = vals.iter().sum::<f64>() / vals.len().max(1) as f64;
    SampledSuccess { samples, min, mean }
}

fn check_weights(weights: &[f64]) -> Result<()> {
    let total: f64 = weights.iter().sum();
    if weights.is_empty() || weights.iter().any(|w| !(*w >= 0.0)) || (total - 1.0).abs() > TOL {
        return Err(Error::InvalidParameter(format!(
            "randomness weights must be a distribution (sum {total})"
        )));
    }
    Ok(())
}

fn check_codewords(m: usize, dim: usize, r: usize, codewords: &[Vec<StateVector>]) -> Result<()> {
    if codewords.len() != 1 << m {
        return Err(Error::DimensionMismatch { expected: 1 << m, found: codewords.len() });
    }
    for row in codewords {
        if row.len() != r {
            return Err(Error::DimensionMismatch { expected: r, found: row.len() });
        }
        if let Some(v) = row.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
        }
    }
    Ok(())
}

/// An `(m, n, p)` quantum random access code with binary projective decoders.
#[derive(Clone, Debug)]
pub struct QracScheme {
    m: usize,
    n: usize,
    ancilla: usize,
    weights: Vec<f64>,
    codewords: Vec<Vec<StateVector>>,
    decoders: Vec<BinaryDecoder>,
}

impl QracScheme {
    /// `codewords[x][r]` is the state for string `x` and randomness `r`;
    /// `decoders[i]` projects onto the outcome-1 subspace of
    /// `C^(2^(n + ancilla))`.
    pub fn new(
        m: usize,
        n: usize,
        ancilla: usize,
        weights: Vec<f64>,
        codewords: Vec<Vec<StateVector>>,
        decoders: Vec<Projector>,
    ) -> Result<Self> {
        if m == 0 || m >= usize::BITS as usize {
            return Err(Error::InvalidParameter(format!("bit count m = {m}")));
        }
        if n + ancilla > 24 {
            return Err(Error::TooLarge { what: "register".into(), limit: 24 });
        }
        check_weights(&weights)?;
        check_codewords(m, 1 << n, weights.len(), &codewords)?;
        if decoders.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: decoders.len() });
        }
        let dim = 1usize << (n + ancilla);
        if let Some(d) = decoders.iter().find(|d| d.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: d.dim() });
        }
        let decoders = decoders.into_iter().map(BinaryDecoder::complementary).collect();
        Ok(QracScheme { m, n, ancilla, weights, codewords, decoders })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ancilla(&self) -> usize {
        self.ancilla
    }

    pub fn randomness_len(&self) -> usize {
        self.weights.len()
    }

    /// Outcome-1 projector of decoder `i`.
    pub fn decoder_projector(&self, i: usize) -> &Projector {
        &self.decoders[i].one
    }
}

impl RandomAccessCode for QracScheme {
    fn bits(&self) -> usize {
        self.m
    }
    fn code_dim(&self) -> usize {
        1 << self.n
    }
    fn ancilla_qubits(&self) -> usize {
        self.ancilla
    }
    fn weights(&self) -> &[f64] {
        &self.weights
    }
    fn codeword(&self, x: usize, r: usize) -> &StateVector {
        &self.codewords[x][r]
    }
    fn decoder(&self, i: usize, _x: usize) -> &BinaryDecoder {
        &self.decoders[i]
    }
}

/// A serial code: the decoder for bit `i` may depend on bits `i+1..m`.
#[derive(Clone, Debug)]
pub struct SerialScheme {
    m: usize,
    code_dim: usize,
    weights: Vec<f64>,
    codewords: Vec<Vec<StateVector>>,
    /// `decoders[i][s]` for suffix value `s < 2^(m - 1 - i)`.
    decoders: Vec<Vec<BinaryDecoder>>,
}

impl SerialScheme {
    pub fn new(
        m: usize,
        code_dim: usize,
        weights: Vec<f64>,
        codewords: Vec<Vec<StateVector>>,
        decoders: Vec<Vec<BinaryDecoder>>,
    ) -> Result<Self> {
        if m == 0 || m >= usize::BITS as usize {
            return Err(Error::InvalidParameter(format!("bit count m = {m}")));
        }
        check_weights(&weights)?;
        check_codewords(m, code_dim, weights.len(), &codewords)?;
        if decoders.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: decoders.len() });
        }
        for (i, per_suffix) in decoders.iter().enumerate() {
            let want = 1usize << (m - 1 - i);
            if per_suffix.len() != want {
                return Err(Error::InvalidParameter(format!(
                    "bit {i} needs a decoder for each of {want} suffixes, got {}",
                    per_suffix.len()
                )));
            }
            let bad = |p: &Projector| p.dim() != code_dim;
            if per_suffix.iter().any(|d| bad(&d.one) || d.zero.as_ref().is_some_and(bad)) {
                return Err(Error::InvalidParameter(format!("decoder for bit {i} has the wrong dimension")));
            }
        }
        Ok(SerialScheme { m, code_dim, weights, codewords, decoders })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Decoder for bit `i` given the suffix value.
    pub fn suffix_decoder(&self, i: usize, suffix: usize) -> &BinaryDecoder {
        &self.decoders[i][suffix]
    }
}

impl RandomAccessCode for SerialScheme {
    fn bits(&self) -> usize {
        self.m
    }
    fn code_dim(&self) -> usize {
        self.code_dim
    }
    fn ancilla_qubits(&self) -> usize {
        0
    }
    fn weights(&self) -> &[f64] {
        &self.weights
    }
    fn codeword(&self, x: usize, r: usize) -> &StateVector {
        &self.codewords[x][r]
    }
    fn decoder(&self, i: usize, x: usize) -> &BinaryDecoder {
        &self.decoders[i][suffix_after(x, self.m, i)]
    }
    fn suffix_dependent(&self) -> bool {
        true
    }
}
