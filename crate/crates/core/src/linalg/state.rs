use serde::{Deserialize, Serialize};

use super::{kron, norm_sqr, C64, TOL, ZERO};
use crate::error::{Error, Result};

/// A unit vector of amplitudes.
///
/// Qubit registers have power-of-two length; automaton states may have any
/// length, so the power-of-two requirement is checked by callers that need
/// it via [`StateVector::qubits`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<C64>", into = "Vec<C64>")]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        Self::with_tolerance(amps, TOL)
    }

    pub fn with_tolerance(amps: Vec<C64>, tol: f64) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidState("empty amplitude vector".into()));
        }
        let n2 = norm_sqr(&amps);
        if !n2.is_finite() || (n2 - 1.0).abs() > tol {
            return Err(Error::InvalidState(format!("squared norm {n2} is not 1")));
        }
        Ok(StateVector { amps })
    }

    /// Rescales a non-zero vector to unit norm.
    pub fn normalized(mut amps: Vec<C64>) -> Result<Self> {
        let n = norm_sqr(&amps).sqrt();
        if amps.is_empty() || !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        amps.iter_mut().for_each(|z| *z /= n);
        Ok(StateVector { amps })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&r| C64::new(r, 0.0)).collect())
    }

    /// Standard basis vector `|k>` of `C^dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim);
        let mut amps = vec![ZERO; dim];
        amps[k] = C64::new(1.0, 0.0);
        StateVector { amps }
    }

    pub(crate) fn from_raw(amps: Vec<C64>) -> Self {
        StateVector { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    /// Number of qubits when the dimension is a power of two.
    pub fn qubits(&self) -> Option<usize> {
        self.amps
            .len()
            .is_power_of_two()
            .then(|| self.amps.len().trailing_zeros() as usize)
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        norm_sqr(&self.amps).sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        super::inner(&self.amps, &other.amps)
    }

    pub fn distance(&self, other: &StateVector) -> f64 {
        super::distance(&self.amps, &other.amps)
    }
}

impl TryFrom<Vec<C64>> for StateVector {
    type Error = Error;
    fn try_from(v: Vec<C64>) -> Result<Self> {
        StateVector::new(v)
    }
}

impl From<StateVector> for Vec<C64> {
    fn from(s: StateVector) -> Self {
        s.amps
    }
}

/// `a ⊗ b`; amplitudes in row-major order (`a` is the high-order factor).
pub fn tensor(a: &StateVector, b: &StateVector) -> StateVector {
    StateVector::from_raw(kron(&a.amps, &b.amps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn basis_products() {
        let zero = StateVector::basis(2, 0);
        let one = StateVector::basis(2, 1);
        assert_eq!(tensor(&zero, &zero).amplitudes(), &[c(1.0), c(0.0), c(0.0), c(0.0)]);
        assert_eq!(tensor(&one, &zero).amplitudes(), &[c(0.0), c(0.0), c(1.0), c(0.0)]);
    }

    #[test]
    fn plus_times_one() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = StateVector::from_real(&[s, s]).unwrap();
        let one = StateVector::basis(2, 1);
        let t = tensor(&plus, &one);
        // brute-force index arithmetic: amplitude(i, j) at 2 * i + j
        for i in 0..2 {
            for j in 0..2 {
                let want = plus.amplitudes()[i] * one.amplitudes()[j];
                assert_eq!(t.amplitudes()[2 * i + j], want);
            }
        }
        assert_eq!(t.amplitudes(), &[c(0.0), c(s), c(0.0), c(s)]);
        assert_eq!(t.qubits(), Some(2));
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(StateVector::from_real(&[1.0, 1.0]).is_err());
        assert!(StateVector::new(vec![]).is_err());
        assert!(StateVector::normalized(vec![c(0.0)]).is_err());
        assert!(StateVector::with_tolerance(vec![c(1.001)], 1e-2).is_ok());
    }
}
