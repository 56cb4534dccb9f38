use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::automaton::{Qfa, StateKind, CENT, DOLLAR};
use super::dfa::Dfa;
use crate::error::{Error, Result};
use crate::linalg::{UnitaryOp, C64};

/// Matrices up to this dimension are written densely.
const DENSE_LIMIT: usize = 64;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QfaDoc {
    states: Vec<String>,
    accept: Vec<String>,
    reject: Vec<String>,
    start: String,
    alphabet: Vec<char>,
    unitaries: BTreeMap<char, MatrixDoc>,
}

/// Dense rows of `[re, im]`, or `{dim, entries: [[row, col, [re, im]]]}`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MatrixDoc {
    Dense(Vec<Vec<[f64; 2]>>),
    Sparse { dim: usize, entries: Vec<(usize, usize, [f64; 2])> },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DfaDoc {
    states: Vec<String>,
    start: String,
    accept: Vec<String>,
    alphabet: Vec<char>,
    transitions: BTreeMap<String, BTreeMap<char, String>>,
}

fn lookup(index: &HashMap<&str, usize>, name: &str, path: &str) -> Result<usize> {
    index.get(name).copied().ok_or_else(|| Error::Format(format!("{path}: unknown state {name:?}")))
}

fn name_index(states: &[String]) -> HashMap<&str, usize> {
    states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect()
}

fn matrix_doc(u: &UnitaryOp) -> MatrixDoc {
    if u.dim() <= DENSE_LIMIT {
        MatrixDoc::Dense(u.to_dense().iter().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect())
    } else {
        let mut entries: Vec<_> = (0..u.dim())
            .flat_map(|c| u.column(c).iter().map(move |&(r, z)| (r, c, [z.re, z.im])))
            .collect();
        entries.sort_by_key(|&(r, c, _)| (r, c));
        MatrixDoc::Sparse { dim: u.dim(), entries }
    }
}

fn matrix_from_doc(doc: MatrixDoc, dim: usize, path: &str) -> Result<UnitaryOp> {
    let wrap = |e: Error| Error::Format(format!("{path}: {e}"));
    match doc {
        MatrixDoc::Dense(rows) => {
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return Err(Error::Format(format!("{path}: expected a {dim}x{dim} matrix")));
            }
            let rows: Vec<Vec<C64>> =
                rows.iter().map(|r| r.iter().map(|[re, im]| C64::new(*re, *im)).collect()).collect();
            UnitaryOp::from_dense(&rows).map_err(wrap)
        }
        MatrixDoc::Sparse { dim: d, entries } => {
            if d != dim {
                return Err(Error::Format(format!("{path}: dim {d} does not match {dim} states")));
            }
            let mut cols = vec![Vec::new(); dim];
            for (k, (r, c, [re, im])) in entries.into_iter().enumerate() {
                if r >= dim || c >= dim {
                    return Err(Error::Format(format!("{path}.entries[{k}]: index out of range")));
                }
                cols[c].push((r, C64::new(re, im)));
            }
            UnitaryOp::from_columns(dim, cols).map_err(wrap)
        }
    }
}

impl Qfa {
    /// Matrices of dimension above 64 are written in sparse form.
    pub fn to_json(&self) -> Result<String> {
        let pick = |k: StateKind| {
            self.names().iter().zip(self.kinds()).filter(|(_, &s)| s == k).map(|(n, _)| n.clone()).collect()
        };
        let mut unitaries = BTreeMap::new();
        for c in [CENT, DOLLAR].into_iter().chain(self.alphabet().iter().copied()) {
            unitaries.insert(c, matrix_doc(self.unitary(c)?));
        }
        let doc = QfaDoc {
            states: self.names().to_vec(),
            accept: pick(StateKind::Accept),
            reject: pick(StateKind::Reject),
            start: self.names()[self.start()].clone(),
            alphabet: self.alphabet().to_vec(),
            unitaries,
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: QfaDoc = serde_json::from_str(text)?;
        let index = name_index(&doc.states);
        if index.len() != doc.states.len() {
            return Err(Error::Format("states: names must be distinct".into()));
        }
        let mut kinds = vec![StateKind::NonHalting; doc.states.len()];
        for (field, list, kind) in [("accept", &doc.accept, StateKind::Accept), ("reject", &doc.reject, StateKind::Reject)] {
            for (k, name) in list.iter().enumerate() {
                let q = lookup(&index, name, &format!("{field}[{k}]"))?;
                if kinds[q] != StateKind::NonHalting {
                    return Err(Error::Format(format!("{field}[{k}]: state {name:?} listed twice")));
                }
                kinds[q] = kind;
            }
        }
        let start = lookup(&index, &doc.start, "start")?;
        let dim = doc.states.len();
        let mut unitaries = BTreeMap::new();
        for (c, m) in doc.unitaries {
            let path = format!("unitaries[{c:?}]");
            unitaries.insert(c, matrix_from_doc(m, dim, &path)?);
        }
        Qfa::new(doc.states, kinds, start, doc.alphabet, unitaries).map_err(|e| Error::Format(e.to_string()))
    }
}

impl Dfa {
    pub fn to_json(&self) -> Result<String> {
        let names = self.names();
        let transitions = (0..self.size())
            .map(|q| {
                let row = self.alphabet().iter().enumerate().map(|(l, &c)| (c, names[self.next(q, l)].clone())).collect();
                (names[q].clone(), row)
            })
            .collect();
        let doc = DfaDoc {
            states: names.to_vec(),
            start: names[self.start()].clone(),
            accept: (0..self.size()).filter(|&q| self.is_accepting(q)).map(|q| names[q].clone()).collect(),
            alphabet: self.alphabet().to_vec(),
            transitions,
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DfaDoc = serde_json::from_str(text)?;
        let index = name_index(&doc.states);
        if index.len() != doc.states.len() {
            return Err(Error::Format("states: names must be distinct".into()));
        }
        let mut accepting = vec![false; doc.states.len()];
        for (k, name) in doc.accept.iter().enumerate() {
            accepting[lookup(&index, name, &format!("accept[{k}]"))?] = true;
        }
        let mut delta = Vec::with_capacity(doc.states.len());
        for q in &doc.states {
            let row = doc
                .transitions
                .get(q)
                .ok_or_else(|| Error::Format(format!("transitions: no row for state {q:?}")))?;
            let targets = doc
                .alphabet
                .iter()
                .map(|c| {
                    let path = format!("transitions[{q:?}][{c:?}]");
                    let t = row.get(c).ok_or_else(|| Error::Format(format!("{path}: missing")))?;
                    lookup(&index, t, &path)
                })
                .collect::<Result<Vec<_>>>()?;
            delta.push(targets);
        }
        let start = lookup(&index, &doc.start, "start")?;
        Dfa::new(doc.states, doc.alphabet, start, accepting, delta).map_err(|e| Error::Format(e.to_string()))
    }
}
