//! Exact primal simplex for `max cᵀz, A z ≤ b, z ≥ 0` with `b ≥ 0`.

use num_rational::Rational64;

pub(crate) struct LpSolution {
    pub value: Rational64,
    /// Optimal dual prices, one per constraint.
    pub dual: Vec<Rational64>,
}

/// Bland's rule keeps the pivot sequence finite. Returns `None` when the
/// objective is unbounded.
pub(crate) fn maximize(a: &[Vec<Rational64>], b: &[Rational64], c: &[Rational64]) -> Option<LpSolution> {
    let zero = Rational64::from_integer(0);
    let one = Rational64::from_integer(1);
    let (rows, vars) = (a.len(), c.len());
    let width = vars + rows;
    let mut t: Vec<Vec<Rational64>> = a
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut full = row.clone();
            full.extend((0..rows).map(|k| if k == r { one } else { zero }));
            full
        })
        .collect();
    let mut rhs = b.to_vec();
    let mut basis: Vec<usize> = (vars..width).collect();
    let mut obj: Vec<Rational64> = c.iter().map(|x| -x).chain((0..rows).map(|_| zero)).collect();
    let mut value = zero;
    loop {
        let Some(e) = (0..width).find(|&j| obj[j] < zero) else { break };
        let mut leave: Option<usize> = None;
        for r in 0..rows {
            if t[r][e] <= zero {
                continue;
            }
            let better = match leave {
                None => true,
                Some(l) => {
                    let (new, old) = (rhs[r] / t[r][e], rhs[l] / t[l][e]);
                    new < old || (new == old && basis[r] < basis[l])
                }
            };
            if better {
                leave = Some(r);
            }
        }
        let l = leave?;
        let piv = t[l][e];
        t[l].iter_mut().for_each(|x| *x /= piv);
        rhs[l] /= piv;
        let pivot_row = t[l].clone();
        let pivot_rhs = rhs[l];
        for r in 0..rows {
            let f = t[r][e];
            if r != l && f != zero {
                t[r].iter_mut().zip(&pivot_row).for_each(|(x, p)| *x -= f * p);
                rhs[r] -= f * pivot_rhs;
            }
        }
        let f = obj[e];
        obj.iter_mut().zip(&pivot_row).for_each(|(x, p)| *x -= f * p);
        value -= f * pivot_rhs;
        basis[l] = e;
    }
    Some(LpSolution { value, dual: obj[vars..].to_vec() })
}
