//! Delaying every halt by `r` letters.
//!
//! Amplitude that would halt is parked in a tagged non-halting copy of its
//! halting state together with a counter. The counter advances on each
//! letter; after `r` more letters, or at `$`, the copy halts with the
//! original verdict. Halting probabilities are unchanged, only delayed.

use std::collections::BTreeMap;

use super::automaton::{Qfa, StateKind, CENT, DOLLAR};
use super::complete::complete_isometry;
use crate::error::Result;
use crate::linalg::C64;

/// `|Q| + 2(r + 2)(|Q_acc| + |Q_rej|)`.
pub fn restricted_state_count(a: &Qfa, r: usize) -> usize {
    let halting = a.count(StateKind::Accept) + a.count(StateKind::Reject);
    a.size() + 2 * (r + 2) * halting
}

pub fn restrict(a: &Qfa, r: usize) -> Result<Qfa> {
    let q = a.size();
    let halting: Vec<usize> = [StateKind::Accept, StateKind::Reject]
        .iter()
        .flat_map(|k| (0..q).filter(move |&s| a.kinds()[s] == *k))
        .collect();
    let mut slot = vec![usize::MAX; q];
    for (h, &s) in halting.iter().enumerate() {
        slot[s] = h;
    }
    let tag = |h: usize, i: usize, halted: bool| q + h * 2 * (r + 2) + 2 * i + usize::from(halted);
    let size = restricted_state_count(a, r);

    let mut names = a.names().to_vec();
    let mut kinds = a.kinds().to_vec();
    names.resize(size, String::new());
    kinds.resize(size, StateKind::NonHalting);
    for (h, &s) in halting.iter().enumerate() {
        let verdict = a.kinds()[s];
        let label = if verdict == StateKind::Accept { "acc" } else { "rej" };
        for i in 0..=r + 1 {
            names[tag(h, i, false)] = format!("{}#{i}:non", a.names()[s]);
            names[tag(h, i, true)] = format!("{}#{i}:{label}", a.names()[s]);
            kinds[tag(h, i, true)] = verdict;
        }
    }

    let mut unitaries = BTreeMap::new();
    for symbol in std::iter::once(CENT).chain(a.alphabet().iter().copied()).chain(std::iter::once(DOLLAR)) {
        let u = a.unitary(symbol)?;
        let mut partial: Vec<Option<Vec<(usize, C64)>>> = vec![None; size];
        for (s, col) in partial.iter_mut().enumerate().take(q) {
            let image = u.column(s).iter().map(|&(t, z)| {
                if symbol == DOLLAR || a.kinds()[t] == StateKind::NonHalting {
                    (t, z)
                } else {
                    (tag(slot[t], 0, false), z)
                }
            });
            *col = Some(image.collect());
        }
        if symbol == DOLLAR {
            for h in 0..halting.len() {
                for i in 0..=r {
                    partial[tag(h, i, false)] = Some(vec![(tag(h, i, true), C64::new(1.0, 0.0))]);
                }
            }
        } else if symbol != CENT {
            for h in 0..halting.len() {
                for i in 0..=r {
                    partial[tag(h, i, false)] = Some(vec![(tag(h, i + 1, i == r), C64::new(1.0, 0.0))]);
                }
            }
        }
        unitaries.insert(symbol, complete_isometry(size, partial)?);
    }
    Qfa::new(names, kinds, a.start(), a.alphabet().to_vec(), unitaries)
}
