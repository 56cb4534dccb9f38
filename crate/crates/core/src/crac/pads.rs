//! Random permutation pads over a covering code.
//!
//! A pad `(π, r)` turns the covering map `S` into
//! `y = π⁻¹(S(π(x ⊕ r))) ⊕ r`. Averaged over many pads, the error that `S`
//! makes is spread evenly across bit positions, so every bit of `x` is
//! recovered from `y` with probability close to `1 - radius/m`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::covering::{greedy_covering_code, CoveringCode};
use super::scheme::{ClassicalRacScheme, CLASSICAL_LIMIT};
use crate::bits::{bit, ceil_log2, format_bits, parse_bits};
use crate::error::{Error, Result};
use crate::table::SuccessTable;

/// Largest `m` for which pad families are verified exhaustively.
pub const PAD_LIMIT: usize = 14;

/// A permutation of bit positions and an XOR mask. `(π(x))_j = x_{π(j)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pad {
    pub perm: Vec<usize>,
    pub mask: usize,
}

impl Pad {
    pub fn new(perm: Vec<usize>, mask: usize) -> Result<Self> {
        let m = perm.len();
        let mut seen = vec![false; m];
        for &p in &perm {
            if p >= m || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter(format!("{perm:?} is not a permutation")));
            }
        }
        if mask >> m != 0 {
            return Err(Error::InvalidParameter(format!("mask wider than {m} bits")));
        }
        Ok(Pad { perm, mask })
    }

    pub fn identity(m: usize) -> Self {
        Pad { perm: (0..m).collect(), mask: 0 }
    }

    fn permute(&self, x: usize) -> usize {
        let m = self.perm.len();
        self.perm
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &src)| acc | (usize::from(bit(x, m, src)) << (m - 1 - j)))
    }

    fn unpermute(&self, y: usize) -> usize {
        let m = self.perm.len();
        self.perm
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &dst)| acc | (usize::from(bit(y, m, j)) << (m - 1 - dst)))
    }
}

/// `π⁻¹(S(π(x ⊕ r))) ⊕ r`.
pub fn pad_encode(code: &CoveringCode, pad: &Pad, x: usize) -> usize {
    pad.unpermute(code.closest_codeword(pad.permute(x ^ pad.mask))) ^ pad.mask
}

/// An ordered list of pads over `m`-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadFamily {
    m: usize,
    pads: Vec<Pad>,
}

impl PadFamily {
    pub fn new(m: usize, pads: Vec<Pad>) -> Result<Self> {
        if pads.is_empty() || pads.iter().any(|p| p.perm.len() != m) {
            return Err(Error::InvalidParameter(format!("a pad family needs at least one pad on {m} bits")));
        }
        Ok(PadFamily { m, pads })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ell(&self) -> usize {
        self.pads.len()
    }

    pub fn pads(&self) -> &[Pad] {
        &self.pads
    }

    /// Fraction of pads whose output agrees with `x` at each `(x, i)`.
    pub fn success_table(&self, code: &CoveringCode) -> Result<SuccessTable> {
        let m = self.m;
        if m > PAD_LIMIT || code.m() != m {
            return Err(Error::InvalidParameter(format!(
                "family on {m} bits needs a matching code and m ≤ {PAD_LIMIT}"
            )));
        }
        let nearest = code.nearest_table();
        let words = code.codewords();
        let ell = self.ell() as f64;
        let probs = (0..1usize << m)
            .into_par_iter()
            .flat_map_iter(|x| {
                let mut hits = vec![0usize; m];
                for pad in &self.pads {
                    let y = pad.unpermute(words[nearest[pad.permute(x ^ pad.mask)]]) ^ pad.mask;
                    for (i, h) in hits.iter_mut().enumerate() {
                        *h += usize::from(bit(x ^ y, m, i) == false);
                    }
                }
                hits.into_iter().map(move |h| h as f64 / ell)
            })
            .collect();
        Ok(SuccessTable::new(m, probs))
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = FamilyDoc {
            m: self.m,
            ell: self.ell(),
            pads: self
                .pads
                .iter()
                .map(|p| PadDoc { perm: p.perm.clone(), mask: format_bits(p.mask, self.m) })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FamilyDoc = serde_json::from_str(text)?;
        if doc.ell != doc.pads.len() {
            return Err(Error::Format(format!("ell = {} but {} pads listed", doc.ell, doc.pads.len())));
        }
        let pads = doc
            .pads
            .into_iter()
            .map(|p| {
                if p.mask.len() != doc.m {
                    return Err(Error::Format(format!("mask {:?} is not {} bits", p.mask, doc.m)));
                }
                Pad::new(p.perm, parse_bits(&p.mask)?)
            })
            .collect::<Result<_>>()?;
        PadFamily::new(doc.m, pads)
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyDoc {
    m: usize,
    ell: usize,
    pads: Vec<PadDoc>,
}

#[derive(Serialize, Deserialize)]
struct PadDoc {
    perm: Vec<usize>,
    mask: String,
}

#[derive(Clone, Debug)]
pub struct PadOptions {
    pub target_ell: usize,
    pub seed: u64,
    pub max_attempts: usize,
}

impl PadOptions {
    pub fn new(target_ell: usize, seed: u64) -> Self {
        PadOptions { target_ell, seed, max_attempts: 64 }
    }
}

/// A verified family together with its code and exact success table.
#[derive(Clone, Debug)]
pub struct PadBuild {
    pub p: f64,
    pub code: CoveringCode,
    pub family: PadFamily,
    pub table: SuccessTable,
    /// Families sampled before one verified.
    pub attempts: usize,
    /// Two-sided Hoeffding width: with probability `1 - 1e-6` over the
    /// sampling, each agreement fraction lies within half this width of its
    /// ensemble mean, which does not depend on the bit position.
    pub deviation_bound: f64,
}

impl PadBuild {
    /// Bits needed to name a pad and a codeword.
    pub fn code_length(&self) -> usize {
        ceil_log2(self.family.ell()) + ceil_log2(self.code.len())
    }

    /// `log₂(ell · |S|)`.
    pub fn code_length_log2(&self) -> f64 {
        (self.family.ell() as f64).log2() + (self.code.len() as f64).log2()
    }
}

/// Covering radius used for accuracy `p`: `⌊(1 - p) m - 1⌋`, clamped to
/// `[0, m]`.
pub fn pad_radius(m: usize, p: f64) -> usize {
    let r = ((1.0 - p) * m as f64 - 1.0 + 1e-9).floor();
    r.clamp(0.0, m as f64) as usize
}

/// Samples pad families until one gives every `(x, i)` accuracy at least
/// `p`. For `p > 1 - 1/m` the identity code with a single pad is returned.
pub fn build_pad_family(m: usize, p: f64, opts: &PadOptions) -> Result<PadBuild> {
    if m == 0 || m > PAD_LIMIT.min(CLASSICAL_LIMIT) {
        return Err(Error::TooLarge { what: format!("pad family for m = {m}"), limit: PAD_LIMIT });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("accuracy {p} outside [0,1]")));
    }
    if opts.target_ell == 0 || opts.max_attempts == 0 {
        return Err(Error::InvalidParameter("need ell ≥ 1 and at least one attempt".into()));
    }
    let deviation = |ell: usize| {
        let events = (m << m) as f64;
        2.0 * ((2.0 * events / 1e-6).ln() / (2.0 * ell as f64)).sqrt()
    };
    if p > 1.0 - 1.0 / m as f64 {
        let code = greedy_covering_code(m, 0)?;
        let family = PadFamily::new(m, vec![Pad::identity(m)])?;
        let table = family.success_table(&code)?;
        return Ok(PadBuild { p, code, family, table, attempts: 1, deviation_bound: deviation(1) });
    }
    let code = greedy_covering_code(m, pad_radius(m, p))?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best = f64::NEG_INFINITY;
    for attempt in 1..=opts.max_attempts {
        let pads = (0..opts.target_ell)
            .map(|_| {
                let mut perm: Vec<usize> = (0..m).collect();
                perm.shuffle(&mut rng);
                Pad { perm, mask: rng.random_range(0..1usize << m) }
            })
            .collect();
        let family = PadFamily::new(m, pads)?;
        let table = family.success_table(&code)?;
        let min = table.min();
        if min >= p - 1e-12 {
            return Ok(PadBuild {
                p,
                code,
                family,
                table,
                attempts: attempt,
                deviation_bound: deviation(opts.target_ell),
            });
        }
        best = best.max(min);
    }
    Err(Error::RetryCapExhausted { attempts: opts.max_attempts, best_min: best })
}

/// The code that stores a random pad index `j` and the index of
/// `S(π_j(x ⊕ r_j))`; decoder `i` rebuilds `y` and reads `y_i`.
pub fn pad_scheme(build: &PadBuild) -> Result<ClassicalRacScheme> {
    let (m, family, code) = (build.family.m(), &build.family, &build.code);
    let ell = family.ell();
    let code_bits = ceil_log2(code.len());
    let n = ceil_log2(ell) + code_bits;
    let nearest = code.nearest_table();
    let words = code.codewords();
    let encodings = (0..1usize << m)
        .map(|x| {
            family
                .pads()
                .iter()
                .enumerate()
                .map(|(j, pad)| (j << code_bits) | nearest[pad.permute(x ^ pad.mask)])
                .collect()
        })
        .collect();
    let decode = |y: usize| {
        let (j, k) = (y >> code_bits, y & ((1 << code_bits) - 1));
        (j < ell && k < words.len()).then(|| {
            let pad = &family.pads()[j];
            pad.unpermute(words[k]) ^ pad.mask
        })
    };
    let decoded: Vec<Option<usize>> = (0..1usize << n).map(decode).collect();
    let decoders = (0..m)
        .map(|i| vec![decoded.iter().map(|y| y.is_some_and(|y| bit(y, m, i))).collect()])
        .collect();
    ClassicalRacScheme::new(m, n, vec![1.0 / ell as f64; ell], encodings, vec![1.0], decoders)
}
