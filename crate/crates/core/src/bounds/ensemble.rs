use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{von_neumann_entropy, DensityMatrix, TOL};
use crate::qrac::RandomAccessCode;

/// Largest codeword dimension for which ensembles are built densely.
pub const ENSEMBLE_DIM_LIMIT: usize = 256;
const ENSEMBLE_BITS_LIMIT: usize = 14;

/// Density matrices with prior probabilities over a common dimension.
#[derive(Clone, Debug)]
pub struct Ensemble {
    members: Vec<(f64, DensityMatrix)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, DensityMatrix)>) -> Result<Self> {
        let dim = members
            .first()
            .map(|(_, r)| r.dim())
            .ok_or_else(|| Error::InvalidParameter("empty ensemble".into()))?;
        if let Some((_, r)) = members.iter().find(|(_, r)| r.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: r.dim() });
        }
        let total: f64 = members.iter().map(|(p, _)| p).sum();
        if members.iter().any(|(p, _)| !(*p >= 0.0)) || (total - 1.0).abs() > TOL {
            return Err(Error::InvalidParameter(format!("ensemble probabilities sum to {total}")));
        }
        Ok(Ensemble { members })
    }

    pub fn members(&self) -> &[(f64, DensityMatrix)] {
        &self.members
    }

    pub fn dim(&self) -> usize {
        self.members[0].1.dim()
    }

    pub fn average(&self) -> DensityMatrix {
        DensityMatrix::mixture(&self.members).expect("members validated on construction")
    }
}

/// `S(ρ_avg) − Σ p_x S(ρ_x)` in bits.
pub fn holevo_chi(e: &Ensemble) -> f64 {
    // collected first so the sum does not depend on the thread split
    let parts: Vec<f64> = e.members.par_iter().map(|(p, rho)| p * von_neumann_entropy(rho)).collect();
    let own: f64 = parts.iter().sum();
    von_neumann_entropy(&e.average()) - own
}

/// Uniform ensemble over `x` of the (possibly mixed) codewords, without
/// the decoder's ancilla.
pub fn codeword_ensemble<S: RandomAccessCode + ?Sized>(s: &S) -> Result<Ensemble> {
    let m = s.bits();
    if m > ENSEMBLE_BITS_LIMIT {
        return Err(Error::TooLarge { what: format!("ensemble over m = {m} bits"), limit: ENSEMBLE_BITS_LIMIT });
    }
    if s.code_dim() > ENSEMBLE_DIM_LIMIT {
        return Err(Error::TooLarge { what: format!("dense ensemble of dimension {}", s.code_dim()), limit: ENSEMBLE_DIM_LIMIT });
    }
    let p = 1.0 / (1usize << m) as f64;
    let members = (0..1usize << m)
        .into_par_iter()
        .map(|x| {
            let parts: Vec<_> = s
                .weights()
                .iter()
                .enumerate()
                .filter(|(_, w)| **w > 0.0)
                .map(|(r, w)| (*w, DensityMatrix::pure(s.codeword(x, r))))
                .collect();
            Ok((p, DensityMatrix::mixture(&parts)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ensemble::new(members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::StateVector;
    use crate::qrac::{qrac_2to1, qrac_3to1};

    fn pure(amps: &[f64]) -> DensityMatrix {
        DensityMatrix::pure(&StateVector::from_real(amps).unwrap())
    }

    #[test]
    fn orthogonal_and_identical_states() {
        let e = Ensemble::new(vec![(0.5, pure(&[1.0, 0.0])), (0.5, pure(&[0.0, 1.0]))]).unwrap();
        assert!((holevo_chi(&e) - 1.0).abs() < 1e-12);
        let e = Ensemble::new(vec![(0.3, pure(&[0.6, 0.8])), (0.7, pure(&[0.6, 0.8]))]).unwrap();
        assert!(holevo_chi(&e).abs() < 1e-12);
    }

    #[test]
    fn validation() {
        assert!(Ensemble::new(vec![(0.5, pure(&[1.0, 0.0])), (0.5, pure(&[1.0, 0.0, 0.0, 0.0]))]).is_err());
        assert!(Ensemble::new(vec![(0.4, pure(&[1.0, 0.0]))]).is_err());
        assert!(Ensemble::new(vec![]).is_err());
    }

    #[test]
    fn qrac_ensembles_fill_the_qubit() {
        // the codewords average to the maximally mixed state
        for s in [qrac_2to1(), qrac_3to1()] {
            let chi = holevo_chi(&codeword_ensemble(&s).unwrap());
            assert!((chi - 1.0).abs() < 1e-9, "{chi}");
        }
    }
}
