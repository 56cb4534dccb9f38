//! Reversible recognizers built from transcripts.
//!
//! A reversible automaton cannot merge two histories, so these automata
//! remember the whole input read so far. Each transcript state moves to the
//! transcript one letter longer; a transcript that cannot grow halts in its
//! own rejecting state, and `$` sends every transcript to its own
//! accepting or rejecting state.

use std::collections::{BTreeMap, HashMap};

use super::automaton::{Qfa, StateKind, CENT, DOLLAR};
use super::complete::complete_permutation;
use super::dfa::{membership_ln, Dfa};
use crate::error::{Error, Result};
use crate::linalg::{UnitaryOp, C64};

/// Largest `n` accepted by [`rfa_ln`].
pub const RFA_LIMIT: usize = 16;

/// State count of [`rfa_ln`]: `3 · 2^(n+3) - 2`.
pub fn rfa_ln_state_count(n: usize) -> usize {
    3 * (1usize << (n + 3)) - 2
}

fn word(len: usize, w: usize) -> String {
    (0..len).map(|k| if (w >> (len - 1 - k)) & 1 == 1 { 'a' } else { 'b' }).collect()
}

struct Layout {
    n: usize,
    transcripts: usize,
}

impl Layout {
    fn new(n: usize) -> Self {
        Layout { n, transcripts: (1usize << (n + 3)) - 1 }
    }
    /// Transcript of length `len` with letters `w` (`a` = 1).
    fn transcript(&self, len: usize, w: usize) -> usize {
        (1usize << len) - 1 + w
    }
    fn tag(&self, len: usize, w: usize) -> usize {
        self.transcripts + self.transcript(len, w)
    }
    fn overflow(&self, w: usize, letter: usize) -> usize {
        2 * self.transcripts + 2 * w + letter
    }
    fn size(&self) -> usize {
        rfa_ln_state_count(self.n)
    }
    fn entries(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..=n + 2).flat_map(|len| (0..1usize << len).map(move |w| (len, w)))
    }
}

fn rfa_parts(n: usize) -> Result<(Layout, Vec<String>, Vec<StateKind>, BTreeMap<char, UnitaryOp>)> {
    if n > RFA_LIMIT {
        return Err(Error::TooLarge { what: format!("reversible recognizer for n = {n}"), limit: RFA_LIMIT });
    }
    let lay = Layout::new(n);
    let size = lay.size();
    let mut names = vec![String::new(); size];
    let mut kinds = vec![StateKind::Reject; size];
    for (len, w) in lay.entries() {
        let text = word(len, w);
        names[lay.transcript(len, w)] = format!("t:{text}");
        kinds[lay.transcript(len, w)] = StateKind::NonHalting;
        let accept = membership_ln(n, &text);
        names[lay.tag(len, w)] = format!("{}:{text}", if accept { "acc" } else { "rej" });
        kinds[lay.tag(len, w)] = if accept { StateKind::Accept } else { StateKind::Reject };
    }
    for w in 0..1usize << (n + 2) {
        for letter in 0..2 {
            names[lay.overflow(w, letter)] = format!("over:{}", word(n + 3, 2 * w + letter));
        }
    }
    let mut unitaries = BTreeMap::new();
    unitaries.insert(CENT, UnitaryOp::identity(size));
    for (c, letter) in [('a', 1usize), ('b', 0)] {
        let mut partial = vec![None; size];
        for (len, w) in lay.entries() {
            partial[lay.transcript(len, w)] = Some(if len <= n + 1 {
                lay.transcript(len + 1, 2 * w + letter)
            } else {
                lay.overflow(w, letter)
            });
        }
        unitaries.insert(c, complete_permutation(&partial)?);
    }
    let mut partial = vec![None; size];
    for (len, w) in lay.entries() {
        partial[lay.transcript(len, w)] = Some(lay.tag(len, w));
    }
    unitaries.insert(DOLLAR, complete_permutation(&partial)?);
    Ok((lay, names, kinds, unitaries))
}

/// A reversible automaton recognizing `L_n` with certainty. Its states are
/// the transcripts of at most `n + 2` letters plus halting tags, so no word
/// of that length halts before `$`.
pub fn rfa_ln(n: usize) -> Result<Qfa> {
    let (_, names, kinds, unitaries) = rfa_parts(n)?;
    Qfa::new(names, kinds, 0, vec!['a', 'b'], unitaries)
}

/// [`rfa_ln`] followed, at `$`, by a rotation by `theta` between the tags of
/// `wa` and `wb` for every `|w| ≤ n`. Recognizes `L_n` with probability
/// `cos²θ` and still never halts before `$` on words of at most `n + 2`
/// letters.
pub fn noisy_rfa_ln(n: usize, theta: f64) -> Result<Qfa> {
    let (lay, names, kinds, mut unitaries) = rfa_parts(n)?;
    let size = lay.size();
    let (s, c) = theta.sin_cos();
    let mut cols: Vec<Vec<(usize, C64)>> = (0..size).map(|j| vec![(j, C64::new(1.0, 0.0))]).collect();
    for len in 0..=n {
        for w in 0..1usize << len {
            let (acc, rej) = (lay.tag(len + 1, 2 * w + 1), lay.tag(len + 1, 2 * w));
            cols[acc] = vec![(acc, C64::new(c, 0.0)), (rej, C64::new(s, 0.0))];
            cols[rej] = vec![(acc, C64::new(-s, 0.0)), (rej, C64::new(c, 0.0))];
        }
    }
    let rot = UnitaryOp::from_columns(size, cols)?;
    let dollar = unitaries.remove(&DOLLAR).expect("dollar present");
    unitaries.insert(DOLLAR, rot.compose(&dollar)?);
    Qfa::new(names, kinds, 0, vec!['a', 'b'], unitaries)
}

/// Embeds a DFA as a reversible automaton.
///
/// A DFA whose letters permute its states is embedded directly, with one
/// halting tag per state for `$`. Otherwise the DFA must accept a finite
/// language; the result then tracks transcripts of live runs, and a letter
/// that leaves the live states halts in a rejecting tag.
pub fn dfa_as_qfa(dfa: &Dfa) -> Result<Qfa> {
    let k = dfa.size();
    let letters = dfa.alphabet().len();
    let bijective = (0..letters).all(|l| {
        let mut hit = vec![false; k];
        (0..k).all(|q| !std::mem::replace(&mut hit[dfa.next(q, l)], true))
    });
    if bijective {
        return direct_embedding(dfa);
    }
    transcript_embedding(dfa)
}

fn direct_embedding(dfa: &Dfa) -> Result<Qfa> {
    let k = dfa.size();
    let mut names: Vec<String> = dfa.names().to_vec();
    let mut kinds = vec![StateKind::NonHalting; k];
    for q in 0..k {
        let accept = dfa.is_accepting(q);
        names.push(format!("{}:{}", if accept { "acc" } else { "rej" }, dfa.names()[q]));
        kinds.push(if accept { StateKind::Accept } else { StateKind::Reject });
    }
    let mut unitaries = BTreeMap::new();
    unitaries.insert(CENT, UnitaryOp::identity(2 * k));
    for (l, &c) in dfa.alphabet().iter().enumerate() {
        let perm: Vec<usize> = (0..2 * k).map(|q| if q < k { dfa.next(q, l) } else { q }).collect();
        unitaries.insert(c, UnitaryOp::from_permutation(&perm)?);
    }
    let swap: Vec<usize> = (0..2 * k).map(|q| (q + k) % (2 * k)).collect();
    unitaries.insert(DOLLAR, UnitaryOp::from_permutation(&swap)?);
    Qfa::new(names, kinds, dfa.start(), dfa.alphabet().to_vec(), unitaries)
}

const TRANSCRIPT_LIMIT: usize = 1 << 16;

fn transcript_embedding(dfa: &Dfa) -> Result<Qfa> {
    let live = dfa.live_states();
    let letters = dfa.alphabet();
    // breadth-first over live runs; a live run longer than the state count
    // repeats a state, so the language would be infinite
    let mut transcripts: Vec<(String, usize)> = Vec::new();
    if live[dfa.start()] {
        transcripts.push((String::new(), dfa.start()));
    }
    let mut k = 0;
    while k < transcripts.len() {
        let (w, q) = transcripts[k].clone();
        if w.chars().count() > dfa.size() {
            return Err(Error::NotEmbeddable(
                "the DFA accepts an infinite language and is not reversible".into(),
            ));
        }
        for (l, &c) in letters.iter().enumerate() {
            let t = dfa.next(q, l);
            if live[t] {
                transcripts.push((format!("{w}{c}"), t));
            }
        }
        if transcripts.len() > TRANSCRIPT_LIMIT {
            return Err(Error::TooLarge { what: "transcript automaton".into(), limit: TRANSCRIPT_LIMIT });
        }
        k += 1;
    }
    if transcripts.is_empty() {
        // empty language: a single start state rejected at `$`
        transcripts.push((String::new(), dfa.start()));
    }
    let index: HashMap<&str, usize> = transcripts.iter().enumerate().map(|(i, (w, _))| (w.as_str(), i)).collect();
    let t = transcripts.len();
    let mut names: Vec<String> = transcripts.iter().map(|(w, _)| format!("t:{w}")).collect();
    let mut kinds = vec![StateKind::NonHalting; t];
    for (w, q) in &transcripts {
        let accept = dfa.is_accepting(*q);
        names.push(format!("{}:{w}", if accept { "acc" } else { "rej" }));
        kinds.push(if accept { StateKind::Accept } else { StateKind::Reject });
    }
    // halting targets for letters that leave the live states
    let mut exits: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, (w, _)) in transcripts.iter().enumerate() {
        for (l, &c) in letters.iter().enumerate() {
            if !index.contains_key(format!("{w}{c}").as_str()) {
                exits.insert((i, l), names.len());
                names.push(format!("dead:{w}{c}"));
                kinds.push(StateKind::Reject);
            }
        }
    }
    let size = names.len();
    let mut unitaries = BTreeMap::new();
    unitaries.insert(CENT, UnitaryOp::identity(size));
    for (l, &c) in letters.iter().enumerate() {
        let mut partial = vec![None; size];
        for (i, (w, _)) in transcripts.iter().enumerate() {
            partial[i] = Some(match index.get(format!("{w}{c}").as_str()) {
                Some(&j) => j,
                None => exits[&(i, l)],
            });
        }
        unitaries.insert(c, complete_permutation(&partial)?);
    }
    let mut partial = vec![None; size];
    for (i, p) in partial.iter_mut().enumerate().take(t) {
        *p = Some(t + i);
    }
    unitaries.insert(DOLLAR, complete_permutation(&partial)?);
    Qfa::new(names, kinds, 0, letters.to_vec(), unitaries)
}
