use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::entropy::binary_entropy;
use crate::bits::{format_bits, hamming, parse_bits};
use crate::error::{Error, Result};

/// Largest word length for exhaustive covering checks.
pub const COVERING_LIMIT: usize = 20;

/// A set of `m`-bit words such that every word is within `radius` of one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringCode {
    m: usize,
    radius: usize,
    codewords: Vec<usize>,
}

/// All `m`-bit masks of weight at most `radius`.
fn ball_offsets(m: usize, radius: usize) -> Vec<usize> {
    (0..1usize << m).filter(|e| e.count_ones() as usize <= radius).collect()
}

impl CoveringCode {
    /// Checks the covering property exhaustively.
    pub fn new(m: usize, radius: usize, mut codewords: Vec<usize>) -> Result<Self> {
        if m == 0 || m > COVERING_LIMIT {
            return Err(Error::TooLarge { what: format!("covering check for m = {m}"), limit: COVERING_LIMIT });
        }
        if radius > m || codewords.iter().any(|c| c >> m != 0) {
            return Err(Error::InvalidParameter(format!("codewords must be {m}-bit words and radius ≤ m")));
        }
        codewords.sort_unstable();
        codewords.dedup();
        let code = CoveringCode { m, radius, codewords };
        if let Some(x) = code.first_uncovered() {
            return Err(Error::VerificationFailed(format!(
                "{} is farther than {radius} from every codeword",
                format_bits(x, m)
            )));
        }
        Ok(code)
    }

    fn first_uncovered(&self) -> Option<usize> {
        let mut covered = vec![false; 1 << self.m];
        if self.radius == self.m && !self.codewords.is_empty() {
            return None;
        }
        let offsets = ball_offsets(self.m, self.radius);
        for c in &self.codewords {
            for e in &offsets {
                covered[c ^ e] = true;
            }
        }
        covered.iter().position(|c| !c)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Codewords in increasing order.
    pub fn codewords(&self) -> &[usize] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Nearest codeword, ties to the numerically smallest.
    pub fn closest_codeword(&self, x: usize) -> usize {
        self.codewords[self.closest_index(x)]
    }

    /// Index of [`CoveringCode::closest_codeword`] in [`CoveringCode::codewords`].
    pub fn closest_index(&self, x: usize) -> usize {
        let mut best = 0;
        for (k, c) in self.codewords.iter().enumerate() {
            if hamming(*c, x) < hamming(self.codewords[best], x) {
                best = k;
            }
        }
        best
    }

    /// `closest_index` for every word, indexed by the word.
    pub fn nearest_table(&self) -> Vec<usize> {
        (0..1usize << self.m).map(|x| self.closest_index(x)).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = CodeDoc {
            m: self.m,
            radius: self.radius,
            codewords: self.codewords.iter().map(|c| format_bits(*c, self.m)).collect(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CodeDoc = serde_json::from_str(text)?;
        let words = doc
            .codewords
            .iter()
            .map(|w| {
                if w.len() != doc.m {
                    return Err(Error::Format(format!("codeword {w:?} is not {} bits", doc.m)));
                }
                parse_bits(w)
            })
            .collect::<Result<_>>()?;
        CoveringCode::new(doc.m, doc.radius, words)
    }
}

#[derive(Serialize, Deserialize)]
struct CodeDoc {
    m: usize,
    radius: usize,
    codewords: Vec<String>,
}

/// Greedy set cover by Hamming balls: repeatedly take the word whose ball
/// holds the most uncovered words, ties to the smallest word.
pub fn greedy_covering_code(m: usize, radius: usize) -> Result<CoveringCode> {
    if m == 0 || m > COVERING_LIMIT {
        return Err(Error::TooLarge { what: format!("covering code for m = {m}"), limit: COVERING_LIMIT });
    }
    if radius > m {
        return Err(Error::InvalidParameter(format!("radius {radius} exceeds word length {m}")));
    }
    if radius == m {
        return CoveringCode::new(m, radius, vec![0]);
    }
    let offsets = ball_offsets(m, radius);
    if (offsets.len() as u64) << m > 1 << 36 {
        return Err(Error::TooLarge { what: format!("greedy cover for m = {m}, radius = {radius}"), limit: 1 << 36 });
    }
    let words = 1usize << m;
    let full = offsets.len();
    // bucket queue keyed by current gain
    let mut gain = vec![full; words];
    let mut buckets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); full + 1];
    buckets[full].extend(0..words);
    let mut top = full;
    let mut covered = vec![false; words];
    let mut remaining = words;
    let mut code = Vec::new();
    while remaining > 0 {
        while buckets[top].is_empty() {
            top -= 1;
        }
        let w = *buckets[top].first().expect("nonempty bucket");
        code.push(w);
        for e in &offsets {
            let u = w ^ e;
            if std::mem::replace(&mut covered[u], true) {
                continue;
            }
            remaining -= 1;
            for f in &offsets {
                let v = u ^ f;
                let g = gain[v];
                buckets[g].remove(&v);
                gain[v] = g - 1;
                buckets[g - 1].insert(v);
            }
        }
    }
    CoveringCode::new(m, radius, code)
}

/// `log₂` of the existential covering-code size `2^((1 - H(p + 1/m)) m + 2 log₂ m)`.
pub fn covering_size_bound_log2(m: usize, p: f64) -> Result<f64> {
    let mf = m as f64;
    let q = (p + 1.0 / mf).min(1.0);
    Ok((1.0 - binary_entropy(q)?) * mf + 2.0 * mf.log2())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_codes() {
        let c = greedy_covering_code(3, 1).unwrap();
        assert_eq!(c.len(), 2);
        // one ball of radius 1 holds 4 of the 8 words
        for w in 0..8 {
            assert!(CoveringCode::new(3, 1, vec![w]).is_err());
        }
        assert_eq!(greedy_covering_code(4, 0).unwrap().len(), 16);
        assert_eq!(greedy_covering_code(5, 5).unwrap().len(), 1);
    }

    #[test]
    fn closest_with_ties() {
        let c = CoveringCode::new(3, 1, vec![0b111, 0b000]).unwrap();
        assert_eq!(c.closest_codeword(0b001), 0b000);
        assert_eq!(c.closest_codeword(0b011), 0b111);
        assert_eq!(c.closest_codeword(0b111), 0b111);
        let c = CoveringCode::new(2, 1, vec![0b01, 0b10]).unwrap();
        assert_eq!(c.closest_codeword(0b00), 0b01);
    }

    #[test]
    fn json_round_trip() {
        let c = greedy_covering_code(6, 2).unwrap();
        assert_eq!(CoveringCode::from_json(&c.to_json().unwrap()).unwrap(), c);
    }
}
