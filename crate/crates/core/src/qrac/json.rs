use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::scheme::{QracScheme, RandomAccessCode};
use crate::bits::{format_bits, parse_bits};
use crate::error::{Error, Result};
use crate::linalg::{Projector, StateVector, C64};

#[derive(Serialize, Deserialize)]
struct SchemeDoc {
    m: usize,
    n: usize,
    #[serde(default)]
    ancilla: usize,
    states: BTreeMap<String, Vec<WeightedState>>,
    decoders: Vec<Vec<Vec<[f64; 2]>>>,
}

#[derive(Serialize, Deserialize)]
struct WeightedState {
    weight: f64,
    amplitudes: Vec<[f64; 2]>,
}

fn pairs(v: &[C64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn complex(v: &[[f64; 2]]) -> Vec<C64> {
    v.iter().map(|[re, im]| C64::new(*re, *im)).collect()
}

/// Serializes a scheme; decoders are written as orthonormal bases of their
/// outcome-1 subspaces.
pub fn scheme_to_json(s: &QracScheme) -> Result<String> {
    let m = s.m();
    let states = (0..1usize << m)
        .map(|x| {
            let list = s
                .weights()
                .iter()
                .enumerate()
                .map(|(r, &weight)| WeightedState { weight, amplitudes: pairs(s.codeword(x, r).amplitudes()) })
                .collect();
            (format_bits(x, m), list)
        })
        .collect();
    let decoders = (0..m)
        .map(|i| Ok(s.decoder_projector(i).to_basis()?.iter().map(|b| pairs(b)).collect()))
        .collect::<Result<_>>()?;
    let doc = SchemeDoc { m, n: s.n(), ancilla: s.ancilla(), states, decoders };
    Ok(serde_json::to_string_pretty(&doc)?)
}

pub fn scheme_from_json(text: &str) -> Result<QracScheme> {
    let doc: SchemeDoc = serde_json::from_str(text)?;
    let m = doc.m;
    if m == 0 || m > 24 {
        return Err(Error::Format(format!("unsupported bit count {m}")));
    }
    if doc.states.len() != 1 << m {
        return Err(Error::Format(format!("expected {} encoded strings, found {}", 1usize << m, doc.states.len())));
    }
    let mut weights: Option<Vec<f64>> = None;
    let mut codewords = vec![Vec::new(); 1 << m];
    for (key, list) in doc.states {
        if key.len() != m {
            return Err(Error::Format(format!("state key {key:?} is not an {m}-bit string")));
        }
        let x = parse_bits(&key)?;
        let w: Vec<f64> = list.iter().map(|s| s.weight).collect();
        match &weights {
            None => weights = Some(w),
            Some(prev) if *prev != w => {
                return Err(Error::Format(format!("string {key} uses different randomness weights")));
            }
            _ => {}
        }
        codewords[x] = list
            .iter()
            .map(|s| StateVector::new(complex(&s.amplitudes)))
            .collect::<Result<_>>()?;
    }
    let dim = 1usize << (doc.n + doc.ancilla);
    let decoders = doc
        .decoders
        .iter()
        .map(|basis| Projector::span(dim, basis.iter().map(|b| complex(b)).collect()))
        .collect::<Result<Vec<_>>>()?;
    QracScheme::new(m, doc.n, doc.ancilla, weights.unwrap_or_default(), codewords, decoders)
}
