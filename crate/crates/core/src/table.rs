use serde::Serialize;

use crate::bits::format_bits;
use crate::error::Result;

/// Per-(string, bit) decoding success probabilities of an `m`-bit code.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuccessTable {
    m: usize,
    probs: Vec<f64>,
}

impl SuccessTable {
    /// `probs[x * m + i]` is the probability that bit `i` of `x` decodes correctly.
    pub fn new(m: usize, probs: Vec<f64>) -> Self {
        assert_eq!(probs.len(), m << m, "table must have m * 2^m entries");
        SuccessTable { m, probs }
    }

    pub fn bits(&self) -> usize {
        self.m
    }

    pub fn get(&self, x: usize, i: usize) -> f64 {
        self.probs[x * self.m + i]
    }

    pub fn min(&self) -> f64 {
        self.probs.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.probs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `1 - min`, the uniform per-bit error of the code.
    pub fn epsilon(&self) -> f64 {
        (1.0 - self.min()).max(0.0)
    }

    /// Rows `(x, i, probability)` in `x`-major order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let m = self.m;
        self.probs
            .iter()
            .enumerate()
            .map(move |(k, &p)| (k / m, k % m, p))
    }

    /// CSV with header `x,i,probability`; `x` rendered as a bit string.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["x", "i", "probability"])?;
        for (x, i, p) in self.rows() {
            w.write_record([format_bits(x, self.m), i.to_string(), p.to_string()])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}
