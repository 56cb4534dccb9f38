use crate::error::{Error, Result};

/// How [`required_copies`] decides that `t` copies suffice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CopiesBound {
    /// `exp(-2t(p - 1/2)²) ≤ ε`; an upper bound on the true minimum.
    #[default]
    Hoeffding,
    /// The exact binomial tail of the majority vote.
    ExactBinomial,
}

const MAX_COPIES: usize = 1 << 24;

/// Probability that a majority of `t` independent trials err, each with
/// probability `q`.
pub fn majority_error(q: f64, t: usize) -> f64 {
    // term k = C(t,k) q^k (1-q)^(t-k), stepped through k with ratios
    let need = t / 2 + 1;
    let lq = q.ln();
    let lp = (1.0 - q).ln();
    let mut log_c = 0.0;
    let mut total = 0.0;
    for k in 0..=t {
        if k > 0 {
            log_c += ((t - k + 1) as f64).ln() - (k as f64).ln();
        }
        if k >= need {
            let term = match (k, t - k) {
                (_, 0) => (log_c + k as f64 * lq).exp(),
                (0, _) => (log_c + t as f64 * lp).exp(),
                _ => (log_c + k as f64 * lq + (t - k) as f64 * lp).exp(),
            };
            total += term;
        }
    }
    total.clamp(0.0, 1.0)
}

/// Smallest odd number of copies whose majority vote errs with probability
/// at most `epsilon` when one copy succeeds with probability `p`.
pub fn required_copies(p: f64, epsilon: f64, bound: CopiesBound) -> Result<usize> {
    if !(p > 0.5 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!("amplification needs 1/2 < p ≤ 1, got {p}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon must lie in (0,1), got {epsilon}")));
    }
    if epsilon >= 1.0 - p {
        return Ok(1);
    }
    let t = match bound {
        CopiesBound::Hoeffding => {
            let gap = 2.0 * (p - 0.5) * (p - 0.5);
            let hoeff = |t: usize| (-(t as f64) * gap).exp();
            let mut t = ((1.0 / epsilon).ln() / gap).ceil().max(1.0) as usize;
            while hoeff(t) > epsilon {
                t += 1;
            }
            while t > 1 && hoeff(t - 1) <= epsilon {
                t -= 1;
            }
            t | 1
        }
        CopiesBound::ExactBinomial => {
            let mut t = 1;
            while majority_error(1.0 - p, t) > epsilon {
                t += 2;
                if t > MAX_COPIES {
                    return Err(Error::TooLarge { what: "copy count".into(), limit: MAX_COPIES });
                }
            }
            t
        }
    };
    Ok(t)
}
