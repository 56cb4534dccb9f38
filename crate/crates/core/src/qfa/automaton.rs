use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{norm_sqr, UnitaryOp, C64, ZERO};

/// Left end marker.
pub const CENT: char = '^';
/// Right end marker.
pub const DOLLAR: char = '$';

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StateKind {
    Accept,
    Reject,
    NonHalting,
}

/// A 1-way QFA with named basis states.
#[derive(Clone, Debug)]
pub struct Qfa {
    names: Vec<String>,
    kinds: Vec<StateKind>,
    start: usize,
    alphabet: Vec<char>,
    cent: Arc<UnitaryOp>,
    dollar: Arc<UnitaryOp>,
    /// Same order as `alphabet`.
    letters: Vec<Arc<UnitaryOp>>,
}

/// Outcome probabilities of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub accept: f64,
    pub reject: f64,
    /// Mass still non-halting after `$`.
    pub residual: f64,
    /// Cumulative halting probability after `^`, after each letter, and
    /// after `$`.
    pub halting_profile: Vec<f64>,
}

impl Qfa {
    /// `unitaries` must hold one operator for `^`, `$` and every letter.
    pub fn new(
        names: Vec<String>,
        kinds: Vec<StateKind>,
        start: usize,
        alphabet: Vec<char>,
        mut unitaries: BTreeMap<char, UnitaryOp>,
    ) -> Result<Self> {
        let dim = names.len();
        if dim == 0 || kinds.len() != dim {
            return Err(Error::InvalidParameter("need one kind per named state".into()));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(Error::InvalidParameter(format!("state name {dup:?} is repeated")));
        }
        if start >= dim || kinds[start] != StateKind::NonHalting {
            return Err(Error::InvalidParameter("start state must be a non-halting state".into()));
        }
        let mut letters_seen = std::collections::HashSet::new();
        for &c in &alphabet {
            if c == CENT || c == DOLLAR {
                return Err(Error::InvalidParameter(format!("{c:?} is reserved for end markers")));
            }
            if !letters_seen.insert(c) {
                return Err(Error::InvalidParameter(format!("letter {c:?} is repeated")));
            }
        }
        let mut take = |c: char| -> Result<Arc<UnitaryOp>> {
            let u = unitaries
                .remove(&c)
                .ok_or_else(|| Error::InvalidParameter(format!("no unitary for symbol {c:?}")))?;
            if u.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: u.dim() });
            }
            Ok(Arc::new(u))
        };
        let cent = take(CENT)?;
        let dollar = take(DOLLAR)?;
        let letters = alphabet.iter().map(|&c| take(c)).collect::<Result<Vec<_>>>()?;
        if let Some(extra) = unitaries.keys().next() {
            return Err(Error::UnknownSymbol(*extra));
        }
        Ok(Qfa { names, kinds, start, alphabet, cent, dollar, letters })
    }

    /// Number of basis states.
    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn kinds(&self) -> &[StateKind] {
        &self.kinds
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn count(&self, kind: StateKind) -> usize {
        self.kinds.iter().filter(|k| **k == kind).count()
    }

    /// Unitary for `^`, `$` or a letter.
    pub fn unitary(&self, symbol: char) -> Result<&Arc<UnitaryOp>> {
        match symbol {
            CENT => Ok(&self.cent),
            DOLLAR => Ok(&self.dollar),
            c => self
                .alphabet
                .iter()
                .position(|&a| a == c)
                .map(|k| &self.letters[k])
                .ok_or(Error::UnknownSymbol(c)),
        }
    }

    pub(crate) fn check_word(&self, word: &str) -> Result<Vec<char>> {
        word.chars()
            .map(|c| if self.alphabet.contains(&c) { Ok(c) } else { Err(Error::UnknownSymbol(c)) })
            .collect()
    }

    /// Applies `U_σ` and removes the halting components, returning the
    /// accepted and rejected mass.
    pub(crate) fn step(&self, symbol: char, v: &mut Vec<C64>) -> Result<(f64, f64)> {
        *v = self.unitary(symbol)?.apply_slice(v);
        let (mut acc, mut rej) = (0.0, 0.0);
        for (z, kind) in v.iter_mut().zip(&self.kinds) {
            match kind {
                StateKind::Accept => acc += std::mem::replace(z, ZERO).norm_sqr(),
                StateKind::Reject => rej += std::mem::replace(z, ZERO).norm_sqr(),
                StateKind::NonHalting => {}
            }
        }
        Ok((acc, rej))
    }

    pub(crate) fn initial(&self) -> Vec<C64> {
        let mut v = vec![ZERO; self.size()];
        v[self.start] = C64::new(1.0, 0.0);
        v
    }

    /// Exact acceptance and rejection probabilities, tracking the
    /// unnormalized non-halting component.
    pub fn run(&self, word: &str) -> Result<RunResult> {
        let letters = self.check_word(word)?;
        let mut v = self.initial();
        let (mut accept, mut reject) = (0.0, 0.0);
        let mut halting_profile = Vec::with_capacity(letters.len() + 2);
        for symbol in std::iter::once(CENT).chain(letters).chain(std::iter::once(DOLLAR)) {
            let (a, r) = self.step(symbol, &mut v)?;
            accept += a;
            reject += r;
            halting_profile.push(accept + reject);
        }
        Ok(RunResult { accept, reject, residual: norm_sqr(&v), halting_profile })
    }

    /// Whether every symbol acts as a permutation of basis states.
    pub fn is_reversible(&self) -> bool {
        std::iter::once(&self.cent)
            .chain(std::iter::once(&self.dollar))
            .chain(&self.letters)
            .all(|u| u.is_permutation())
    }
}
