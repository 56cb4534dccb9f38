use crate::error::{Error, Result};

/// `H(p) = -p log₂ p - (1-p) log₂(1-p)`, with `H(0) = H(1) = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("probability {p} outside [0,1]")));
    }
    let h = |q: f64| if q == 0.0 { 0.0 } else { -q * q.log2() };
    Ok(h(p) + h(1.0 - p))
}

/// `(1 - H(p)) m`, the fewest bits any classical `(m, n, p)` code can use.
/// For `p ≤ 1/2` the bound is vacuous; this is reported as an error.
pub fn classical_lower_bound(m: usize, p: f64) -> Result<f64> {
    if !(p > 0.5 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!("the entropy bound needs 1/2 < p ≤ 1, got {p}")));
    }
    Ok((1.0 - binary_entropy(p)?) * m as f64)
}
