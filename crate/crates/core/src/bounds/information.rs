use rayon::prelude::*;
use serde::Serialize;

use crate::bits::bit;
use crate::crac::ClassicalRacScheme;
use crate::error::{Error, Result};
use crate::qrac::RandomAccessCode;

const INFO_BITS_LIMIT: usize = 14;

/// `I(X_i : Z_i)` for uniform `X` and each decoder outcome `Z_i`, in bits.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MutualInformation {
    pub per_bit: Vec<f64>,
    pub total: f64,
}

impl MutualInformation {
    pub fn bit(&self, i: usize) -> f64 {
        self.per_bit[i]
    }
}

fn check_bits(m: usize) -> Result<()> {
    if m > INFO_BITS_LIMIT {
        return Err(Error::TooLarge { what: format!("mutual information over m = {m} bits"), limit: INFO_BITS_LIMIT });
    }
    Ok(())
}

/// Mutual information between bit `i` of a uniform `x` and an outcome in
/// {0, 1, neither} distributed as `outcome(x)`.
fn bit_information(m: usize, i: usize, outcome: impl Fn(usize) -> [f64; 3]) -> f64 {
    let scale = 1.0 / (1usize << m) as f64;
    let mut joint = [[0.0f64; 3]; 2];
    for x in 0..1usize << m {
        let row = &mut joint[usize::from(bit(x, m, i))];
        for (j, p) in row.iter_mut().zip(outcome(x)) {
            *j += p * scale;
        }
    }
    let pz: Vec<f64> = (0..3).map(|z| joint[0][z] + joint[1][z]).collect();
    let mut info = 0.0;
    for row in &joint {
        let pb: f64 = row.iter().sum();
        for (z, &p) in row.iter().enumerate() {
            if p > 0.0 {
                info += p * (p / (pb * pz[z])).log2();
            }
        }
    }
    info.max(0.0)
}

fn collect(per_bit: Vec<f64>) -> MutualInformation {
    let total = per_bit.iter().sum();
    MutualInformation { per_bit, total }
}

/// Exact per-bit decoding information of a quantum code. Mass that a
/// decoder assigns to neither outcome counts as a third outcome.
pub fn decoding_mutual_information<S: RandomAccessCode + ?Sized>(s: &S) -> Result<MutualInformation> {
    let m = s.bits();
    check_bits(m)?;
    let per_bit = (0..m)
        .into_par_iter()
        .map(|i| {
            bit_information(m, i, |x| {
                let dec = s.decoder(i, x);
                let (mut one, mut zero) = (0.0, 0.0);
                for (r, w) in s.weights().iter().enumerate().filter(|(_, w)| **w > 0.0) {
                    let v = s.extended_codeword(x, r);
                    one += w * dec.success(&v, true);
                    zero += w * dec.success(&v, false);
                }
                [zero, one, (1.0 - one - zero).max(0.0)]
            })
        })
        .collect();
    Ok(collect(per_bit))
}

pub fn classical_decoding_mutual_information(s: &ClassicalRacScheme) -> Result<MutualInformation> {
    let m = s.m();
    check_bits(m)?;
    let per_bit = (0..m)
        .into_par_iter()
        .map(|i| {
            bit_information(m, i, |x| {
                let one = s.prob_output_one(x, i);
                [1.0 - one, one, 0.0]
            })
        })
        .collect();
    Ok(collect(per_bit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qrac::qrac_2to1;

    #[test]
    fn two_into_one_is_a_symmetric_channel() {
        // 1 − H(cos²(π/8)) from an independent high-precision evaluation
        let mi = decoding_mutual_information(&qrac_2to1()).unwrap();
        for i in 0..2 {
            assert!((mi.bit(i) - 0.399123963307144).abs() < 1e-12, "{}", mi.bit(i));
        }
        assert!((mi.total - 2.0 * 0.399123963307144).abs() < 1e-12);
    }

    #[test]
    fn perfect_and_blind_classical_decoders() {
        // identity code on 2 bits, then a decoder that ignores its input
        let enc = (0..4).map(|x| vec![x]).collect();
        let copy = (0..2).map(|i| vec![(0..4).map(|y| (y >> (1 - i)) & 1 == 1).collect()]).collect();
        let s = ClassicalRacScheme::new(2, 2, vec![1.0], enc, vec![1.0], copy).unwrap();
        let mi = classical_decoding_mutual_information(&s).unwrap();
        assert!((mi.total - 2.0).abs() < 1e-12);

        let enc = (0..4).map(|x| vec![x]).collect();
        let coin = (0..2).map(|_| vec![vec![true; 4], vec![false; 4]]).collect();
        let s = ClassicalRacScheme::new(2, 2, vec![1.0], enc, vec![0.5, 0.5], coin).unwrap();
        assert!(classical_decoding_mutual_information(&s).unwrap().total.abs() < 1e-12);
    }
}
