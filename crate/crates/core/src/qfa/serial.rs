//! The serial code carried by a restricted automaton.
//!
//! After reading `^x` an `n`-restricted automaton for `L_n` holds a state
//! from which any bit can be recovered: undo the letters after position `i`
//! and apply `$`. The word then ends at `x_i`, so it is accepted exactly
//! when `x_i = a`.

use std::sync::Arc;

use super::automaton::{Qfa, StateKind, CENT, DOLLAR};
use crate::bits::{bit, ceil_log2};
use crate::error::{Error, Result};
use crate::linalg::{norm_sqr, Projector, StateVector, UnitaryOp};
use crate::qrac::{BinaryDecoder, SerialScheme};

/// Largest `n` for serial codes read off an automaton.
pub const SERIAL_LIMIT: usize = 16;

/// `a` for 1 and `b` for 0, first letter from the most significant bit.
pub fn bits_to_word(x: usize, m: usize) -> String {
    (0..m).map(|i| if bit(x, m, i) { 'a' } else { 'b' }).collect()
}

pub fn word_to_bits(word: &str) -> Result<usize> {
    word.chars().try_fold(0usize, |acc, c| match c {
        'a' => Ok(acc << 1 | 1),
        'b' => Ok(acc << 1),
        other => Err(Error::UnknownSymbol(other)),
    })
}

/// Checks that no prefix of at most `n` letters over `{a, b}` halts with
/// non-zero probability, returning the state after `^x` for every
/// `x ∈ {a,b}^n`.
pub fn check_restricted(a: &Qfa, n: usize) -> Result<Vec<Vec<crate::linalg::C64>>> {
    if n > SERIAL_LIMIT {
        return Err(Error::TooLarge { what: format!("restriction check for n = {n}"), limit: SERIAL_LIMIT });
    }
    for c in ['a', 'b'] {
        a.unitary(c)?;
    }
    let mut v = a.initial();
    let (acc, rej) = a.step(CENT, &mut v)?;
    if acc + rej > 1e-12 {
        return Err(Error::NotRestricted { prefix: String::new(), mass: acc + rej, r: n });
    }
    let mut level = vec![v];
    for len in 0..n {
        let mut next = Vec::with_capacity(level.len() * 2);
        for (w, v) in level.into_iter().enumerate() {
            for (letter, c) in [(0usize, 'b'), (1, 'a')] {
                let mut u = v.clone();
                let (acc, rej) = a.step(c, &mut u)?;
                if acc + rej > 1e-12 {
                    let prefix = bits_to_word(2 * w + letter, len + 1);
                    return Err(Error::NotRestricted { prefix, mass: acc + rej, r: n });
                }
                next.push(u);
            }
        }
        level = next;
    }
    Ok(level)
}

/// The serial code of an `n`-restricted automaton for `L_n`: `x` is
/// encoded by the state after reading `^x`, and bit `i` is decoded from
/// the suffix `y = x_{i+1} … x_n` by undoing `y`, applying `$` and reading
/// accept as 1 and reject as 0. Non-halting mass decodes to neither.
pub fn serial_from_qfa(a: &Qfa, n: usize) -> Result<SerialScheme> {
    if n == 0 {
        return Err(Error::InvalidParameter("serial codes need n ≥ 1".into()));
    }
    let states = check_restricted(a, n)?;
    let codewords = states
        .into_iter()
        .enumerate()
        .map(|(x, v)| {
            let mass = norm_sqr(&v);
            if (mass - 1.0).abs() > 1e-9 {
                return Err(Error::NotRestricted { prefix: bits_to_word(x, n), mass: 1.0 - mass, r: n });
            }
            Ok(vec![StateVector::new(v)?])
        })
        .collect::<Result<Vec<_>>>()?;
    let pair = |c: char| -> Result<(Arc<UnitaryOp>, Arc<UnitaryOp>)> {
        let u = a.unitary(c)?.clone();
        Ok((Arc::new(u.adjoint()), u))
    };
    let undo = [pair('b')?, pair('a')?];
    let dollar = {
        let u = a.unitary(DOLLAR)?.clone();
        (u.clone(), Arc::new(u.adjoint()))
    };
    let keep = |k: StateKind| a.kinds().iter().map(|s| *s == k).collect::<Vec<_>>();
    let decoders = (0..n)
        .map(|i| {
            let len = n - 1 - i;
            (0..1usize << len)
                .map(|suffix| {
                    // U_y^{-1} undoes the last letter first
                    let mut ops: Vec<_> = (0..len).rev().map(|k| undo[usize::from(bit(suffix, len, k))].clone()).collect();
                    ops.push(dollar.clone());
                    Ok(BinaryDecoder {
                        one: Projector::conjugated_pairs(ops.clone(), keep(StateKind::Accept))?,
                        zero: Some(Projector::conjugated_pairs(ops, keep(StateKind::Reject))?),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SerialScheme::new(n, a.size(), vec![1.0], codewords, decoders)
}

/// Size of an automaton and the qubits needed to hold its state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeReport {
    pub states: usize,
    pub qubits: usize,
}

impl SizeReport {
    pub fn for_states(states: usize) -> Self {
        SizeReport { states, qubits: ceil_log2(states) }
    }
}

pub fn qfa_size_report(a: &Qfa) -> SizeReport {
    SizeReport::for_states(a.size())
}
