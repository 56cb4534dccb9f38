//! The 2→1 classical game.
//!
//! With independent encoder and decoder randomness, decoder `i` is described
//! by the pair `(P(V_i(0) = 1), P(V_i(1) = 1))`. Collecting the first
//! coordinates of both decoders gives the point `P⁰` and the second gives
//! `P¹`; an encoding of `x` lands on the segment between them. Decoding both
//! bits of `x` with probability above 1/2 needs that point inside the open
//! quarter of the unit square belonging to `x`, and no segment meets all four.

use num_rational::Rational64;

use super::simplex::maximize;
use crate::error::{Error, Result};

/// Open quarters of the unit square. The horizontal coordinate is decoder
/// 1, the vertical decoder 2; quarter `UpperRight` belongs to `x = 11`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quadrant {
    LowerLeft,
    LowerRight,
    UpperLeft,
    UpperRight,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] =
        [Quadrant::LowerLeft, Quadrant::LowerRight, Quadrant::UpperLeft, Quadrant::UpperRight];

    /// The quarter in which both bits of the 2-bit string `x` decode
    /// correctly with probability above 1/2.
    pub fn for_string(x: usize) -> Quadrant {
        match x & 3 {
            0b00 => Quadrant::LowerLeft,
            0b10 => Quadrant::LowerRight,
            0b01 => Quadrant::UpperLeft,
            _ => Quadrant::UpperRight,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Quadrant::LowerLeft => "LL",
            Quadrant::LowerRight => "LR",
            Quadrant::UpperLeft => "UL",
            Quadrant::UpperRight => "UR",
        }
    }

    fn bounds(self) -> [(f64, f64); 2] {
        let (lo, hi) = ((0.0, 0.5), (0.5, 1.0));
        match self {
            Quadrant::LowerLeft => [lo, lo],
            Quadrant::LowerRight => [hi, lo],
            Quadrant::UpperLeft => [lo, hi],
            Quadrant::UpperRight => [hi, hi],
        }
    }
}

/// `p0` and `p1` are the decoders' probabilities of answering 1 on the
/// received bits 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecoderPointPair {
    pub p0: (f64, f64),
    pub p1: (f64, f64),
}

impl DecoderPointPair {
    pub fn new(p0: (f64, f64), p1: (f64, f64)) -> Result<Self> {
        let ok = |c: f64| (0.0..=1.0).contains(&c);
        if ![p0.0, p0.1, p1.0, p1.1].into_iter().all(ok) {
            return Err(Error::InvalidParameter("decoder points must lie in the unit square".into()));
        }
        Ok(DecoderPointPair { p0, p1 })
    }
}

/// Open quarters that the closed segment from `p0` to `p1` does not enter.
pub fn quarter_miss(pp: &DecoderPointPair) -> Vec<Quadrant> {
    Quadrant::ALL.into_iter().filter(|q| !segment_enters(pp, *q)).collect()
}

fn segment_enters(pp: &DecoderPointPair, q: Quadrant) -> bool {
    // parameter range [lo, hi] with open/closed flags
    let (mut lo, mut lo_open, mut hi, mut hi_open) = (0.0f64, false, 1.0f64, false);
    let start = [pp.p0.0, pp.p0.1];
    let dir = [pp.p1.0 - pp.p0.0, pp.p1.1 - pp.p0.1];
    for (k, (a, b)) in q.bounds().into_iter().enumerate() {
        if dir[k] == 0.0 {
            if !(a < start[k] && start[k] < b) {
                return false;
            }
            continue;
        }
        let (mut t1, mut t2) = ((a - start[k]) / dir[k], (b - start[k]) / dir[k]);
        if t1 > t2 {
            std::mem::swap(&mut t1, &mut t2);
        }
        if t1 >= lo {
            (lo, lo_open) = (t1, true);
        }
        if t2 <= hi {
            (hi, hi_open) = (t2, true);
        }
    }
    lo < hi || (lo == hi && !lo_open && !hi_open)
}

/// A strategy with private randomness on both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct PrivateStrategy {
    /// `P(encoding of x is 1)` per 2-bit string `x`.
    pub encode_one: [Rational64; 4],
    /// `decode_one[i][y] = P(V_i(y) = 1)`.
    pub decode_one: [[Rational64; 2]; 2],
}

impl PrivateStrategy {
    /// Exact success of bit `i` (0 or 1) of `x`.
    pub fn success(&self, x: usize, i: usize) -> Rational64 {
        let one = Rational64::from_integer(1);
        let q = self.encode_one[x];
        let want = (x >> (1 - i)) & 1 == 1;
        let hit = |y: usize| {
            let p = self.decode_one[i][y];
            if want { p } else { one - p }
        };
        (one - q) * hit(0) + q * hit(1)
    }

    pub fn min_success(&self) -> Rational64 {
        (0..4).flat_map(|x| (0..2).map(move |i| self.success(x, i))).min().expect("nonempty")
    }

    pub fn points(&self) -> DecoderPointPair {
        let f = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
        let d = &self.decode_one;
        DecoderPointPair { p0: (f(d[0][0]), f(d[1][0])), p1: (f(d[0][1]), f(d[1][1])) }
    }
}

#[derive(Clone, Debug)]
pub struct TwoIntoOne {
    /// Best worst-case success with independent randomness.
    pub value: Rational64,
    /// Ignores the message and answers each bit by a fair coin.
    pub witness: PrivateStrategy,
    /// Best worst-case success over the 256 deterministic strategies.
    pub best_pure: Rational64,
    /// Best value found on the decoder grid with an exact encoder best
    /// response.
    pub grid_value: Rational64,
    pub grid: i64,
    /// Value when encoder and decoder share randomness, which lets them
    /// agree on the transmitted bit and beat 1/2.
    pub shared_value: Rational64,
    /// Optimal shared mixture as `(encoder, decoder 1, decoder 2, weight)`,
    /// each deterministic map given as a bit table indexed by its input.
    pub shared_mixture: Vec<([u8; 4], [u8; 2], [u8; 2], Rational64)>,
}

/// Deterministic strategy `s`: encoder table in bits 0..4, decoder tables
/// in bits 4..6 and 6..8.
fn pure_success(s: usize, x: usize, i: usize) -> bool {
    let y = (s >> x) & 1;
    let d = (s >> (4 + 2 * i)) & 3;
    (d >> y) & 1 == (x >> (1 - i)) & 1
}

fn table<const N: usize>(bits: usize) -> [u8; N] {
    std::array::from_fn(|k| ((bits >> k) & 1) as u8)
}

/// Best private-randomness response of the encoder to fixed decoders. For
/// each `x` both success curves are affine in `P(encode 1)`, so the best
/// worst bit sits at an endpoint or where the curves cross.
fn encoder_response(decode_one: [[Rational64; 2]; 2]) -> PrivateStrategy {
    let zero = Rational64::from_integer(0);
    let one = Rational64::from_integer(1);
    let mut s = PrivateStrategy { encode_one: [zero; 4], decode_one };
    for x in 0..4 {
        let mut at = |q: Rational64| {
            s.encode_one[x] = q;
            [s.success(x, 0), s.success(x, 1)]
        };
        let (s0, s1) = (at(zero), at(one));
        let slope = [s1[0] - s0[0], s1[1] - s0[1]];
        let mut candidates = vec![zero, one];
        if slope[0] != slope[1] {
            let q = (s0[1] - s0[0]) / (slope[0] - slope[1]);
            if q > zero && q < one {
                candidates.push(q);
            }
        }
        let worst = |q: &Rational64| (s0[0] + *q * slope[0]).min(s0[1] + *q * slope[1]);
        s.encode_one[x] = candidates.into_iter().max_by_key(worst).expect("candidates");
    }
    s
}

/// Exact analysis of the 2→1 classical game.
pub fn best_two_into_one() -> TwoIntoOne {
    let zero = Rational64::from_integer(0);
    let one = Rational64::from_integer(1);
    let half = Rational64::new(1, 2);
    let cells: Vec<(usize, usize)> = (0..4).flat_map(|x| (0..2).map(move |i| (x, i))).collect();

    let best_pure = if (0..256).any(|s| cells.iter().all(|&(x, i)| pure_success(s, x, i))) { one } else { zero };

    // max Σ z s.t. Σ_cells M[s][cell] z_cell ≤ 1 per strategy; value = 1 / opt
    let a: Vec<Vec<Rational64>> = (0..256)
        .map(|s| cells.iter().map(|&(x, i)| if pure_success(s, x, i) { one } else { zero }).collect())
        .collect();
    let lp = maximize(&a, &vec![one; 256], &vec![one; cells.len()]).expect("bounded game");
    let shared_value = one / lp.value;
    let shared_mixture = lp
        .dual
        .iter()
        .enumerate()
        .filter(|(_, y)| **y != zero)
        .map(|(s, y)| (table::<4>(s), table::<2>(s >> 4), table::<2>(s >> 6), *y * shared_value))
        .collect();

    let grid: i64 = 8;
    let levels: Vec<Rational64> = (0..=grid).map(|k| Rational64::new(k, grid)).collect();
    let mut grid_value = zero;
    for &a in &levels {
        for &b in &levels {
            for &c in &levels {
                for &d in &levels {
                    let v = encoder_response([[a, b], [c, d]]).min_success();
                    grid_value = grid_value.max(v);
                }
            }
        }
    }

    let witness = PrivateStrategy { encode_one: [zero; 4], decode_one: [[half; 2]; 2] };
    let value = grid_value.max(witness.min_success());
    TwoIntoOne { value, witness, best_pure, grid_value, grid, shared_value, shared_mixture }
}
