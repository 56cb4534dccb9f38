use rayon::prelude::*;

use crate::bits::bit;
use crate::error::{Error, Result};
use crate::table::SuccessTable;

/// Largest `m` for exact classical evaluation.
pub const CLASSICAL_LIMIT: usize = 14;
/// Largest codeword length whose decoder tables are stored.
pub const CODE_LIMIT: usize = 20;

/// A classical `(m, n, p)` code: a randomized encoder to `n`-bit strings and
/// randomized per-bit decoders, each with its own finite randomness.
#[derive(Clone, Debug)]
pub struct ClassicalRacScheme {
    m: usize,
    n: usize,
    enc_weights: Vec<f64>,
    /// `encodings[x][r]`.
    encodings: Vec<Vec<usize>>,
    dec_weights: Vec<f64>,
    /// `decoders[i][r][y]`.
    decoders: Vec<Vec<Vec<bool>>>,
}

fn check_weights(w: &[f64]) -> Result<()> {
    let total: f64 = w.iter().sum();
    if w.is_empty() || w.iter().any(|x| !(*x >= 0.0)) || (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!("randomness weights must sum to 1 (got {total})")));
    }
    Ok(())
}

impl ClassicalRacScheme {
    pub fn new(
        m: usize,
        n: usize,
        enc_weights: Vec<f64>,
        encodings: Vec<Vec<usize>>,
        dec_weights: Vec<f64>,
        decoders: Vec<Vec<Vec<bool>>>,
    ) -> Result<Self> {
        if m == 0 || m > CLASSICAL_LIMIT {
            return Err(Error::TooLarge { what: format!("classical code with m = {m}"), limit: CLASSICAL_LIMIT });
        }
        if n > CODE_LIMIT {
            return Err(Error::TooLarge { what: format!("{n}-bit codewords"), limit: CODE_LIMIT });
        }
        check_weights(&enc_weights)?;
        check_weights(&dec_weights)?;
        if encodings.len() != 1 << m
            || encodings.iter().any(|row| row.len() != enc_weights.len() || row.iter().any(|y| y >> n != 0))
        {
            return Err(Error::InvalidParameter(format!(
                "encoder needs one {n}-bit word per string and randomness value"
            )));
        }
        if decoders.len() != m
            || decoders.iter().any(|d| {
                d.len() != dec_weights.len() || d.iter().any(|t| t.len() != 1 << n)
            })
        {
            return Err(Error::InvalidParameter(format!(
                "need {m} decoders, each a table over {n}-bit words per randomness value"
            )));
        }
        Ok(ClassicalRacScheme { m, n, enc_weights, encodings, dec_weights, decoders })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Distribution of the codeword for `x`.
    pub fn encoding_distribution(&self, x: usize) -> impl Iterator<Item = (f64, usize)> + '_ {
        self.enc_weights.iter().copied().zip(self.encodings[x].iter().copied())
    }

    /// Probability that decoder `i` outputs 1 on codeword `y`.
    pub fn prob_decode_one(&self, i: usize, y: usize) -> f64 {
        self.dec_weights
            .iter()
            .zip(&self.decoders[i])
            .filter(|(_, t)| t[y])
            .map(|(w, _)| w)
            .sum()
    }

    /// Probability that decoder `i` outputs 1 on an encoding of `x`.
    pub fn prob_output_one(&self, x: usize, i: usize) -> f64 {
        self.encoding_distribution(x).map(|(w, y)| w * self.prob_decode_one(i, y)).sum()
    }

    pub fn bit_success(&self, x: usize, i: usize) -> f64 {
        let one = self.prob_output_one(x, i);
        if bit(x, self.m, i) { one } else { 1.0 - one }
    }
}

/// Exact success of every `(x, i)`, summed over both randomness registers.
pub fn exact_success(s: &ClassicalRacScheme) -> SuccessTable {
    let m = s.m;
    let probs = (0..1usize << m)
        .into_par_iter()
        .flat_map_iter(|x| (0..m).map(move |i| s.bit_success(x, i).clamp(0.0, 1.0)))
        .collect();
    SuccessTable::new(m, probs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repetition_and_coin_flip() {
        // identity code: perfect
        let tables = (0..2).map(|i| vec![(0..4).map(|y| (y >> (1 - i)) & 1 == 1).collect()]).collect();
        let s = ClassicalRacScheme::new(2, 2, vec![1.0], (0..4).map(|x| vec![x]).collect(), vec![1.0], tables)
            .unwrap();
        assert_eq!(exact_success(&s).min(), 1.0);
        // decoder ignores the codeword and flips a coin
        let coin = vec![vec![vec![false; 2], vec![true; 2]]; 2];
        let s = ClassicalRacScheme::new(2, 1, vec![1.0], (0..4).map(|x| vec![x >> 1]).collect(), vec![0.5, 0.5], coin)
            .unwrap();
        let t = exact_success(&s);
        assert_eq!((t.min(), t.max()), (0.5, 0.5));
    }

    #[test]
    fn validation() {
        let bad = ClassicalRacScheme::new(1, 1, vec![0.7], vec![vec![0], vec![1]], vec![1.0], vec![vec![vec![false, true]]]);
        assert!(bad.is_err());
        let bad = ClassicalRacScheme::new(1, 1, vec![1.0], vec![vec![0], vec![2]], vec![1.0], vec![vec![vec![false, true]]]);
        assert!(bad.is_err());
    }
}
