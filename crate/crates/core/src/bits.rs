//! Bit-string helpers.
//!
//! An `m`-bit string is stored as an integer whose most significant of the
//! `m` low bits is position 0. This mirrors the qubit convention used in
//! [`crate::linalg`]: the leftmost qubit is the most significant amplitude
//! index.

use crate::error::{Error, Result};

/// Bit at position `i` (0-based from the left) of the `m`-bit string `x`.
#[inline]
pub fn bit(x: usize, m: usize, i: usize) -> bool {
    debug_assert!(i < m);
    (x >> (m - 1 - i)) & 1 == 1
}

/// Mask selecting position `i` of an `m`-bit string.
#[inline]
pub fn mask(m: usize, i: usize) -> usize {
    1 << (m - 1 - i)
}

/// The `m - i - 1` bits following position `i`, as an integer.
#[inline]
pub fn suffix_after(x: usize, m: usize, i: usize) -> usize {
    x & ((1usize << (m - 1 - i)) - 1)
}

pub fn hamming(a: usize, b: usize) -> u32 {
    (a ^ b).count_ones()
}

pub fn format_bits(x: usize, m: usize) -> String {
    (0..m).map(|i| if bit(x, m, i) { '1' } else { '0' }).collect()
}

pub fn parse_bits(s: &str) -> Result<usize> {
    if s.len() > usize::BITS as usize - 1 {
        return Err(Error::Format(format!("bit string too long: {s:?}")));
    }
    s.chars().try_fold(0usize, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        other => Err(Error::Format(format!("invalid bit {other:?} in {s:?}"))),
    })
}

/// Smallest `q` with `2^q >= d` (0 for `d <= 1`).
pub fn ceil_log2(d: usize) -> usize {
    if d <= 1 {
        0
    } else {
        (usize::BITS - (d - 1).leading_zeros()) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn msb_first() {
        assert!(bit(0b100, 3, 0));
        assert!(!bit(0b100, 3, 2));
        assert_eq!(format_bits(0b011, 3), "011");
        assert_eq!(parse_bits("011").unwrap(), 3);
        assert_eq!(suffix_after(0b1011, 4, 1), 0b11);
        assert_eq!(suffix_after(0b1011, 4, 3), 0);
        assert!(parse_bits("012").is_err());
    }

    #[test]
    fn log2_ceiling() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(13), 4);
        assert_eq!(ceil_log2(16), 4);
        assert_eq!(ceil_log2(17), 5);
    }
}
