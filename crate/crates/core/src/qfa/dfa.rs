use crate::error::{Error, Result};

/// A complete deterministic finite automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    names: Vec<String>,
    alphabet: Vec<char>,
    start: usize,
    accepting: Vec<bool>,
    /// `delta[state][letter index]`.
    delta: Vec<Vec<usize>>,
}

impl Dfa {
    pub fn new(
        names: Vec<String>,
        alphabet: Vec<char>,
        start: usize,
        accepting: Vec<bool>,
        delta: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let k = names.len();
        if k == 0 || start >= k || accepting.len() != k || delta.len() != k {
            return Err(Error::InvalidParameter("DFA tables must cover every state".into()));
        }
        if delta.iter().any(|row| row.len() != alphabet.len() || row.iter().any(|&t| t >= k)) {
            return Err(Error::InvalidParameter("DFA transitions must be total over the alphabet".into()));
        }
        Ok(Dfa { names, alphabet, start, accepting, delta })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn next(&self, q: usize, letter: usize) -> usize {
        self.delta[q][letter]
    }

    pub fn letter_index(&self, c: char) -> Result<usize> {
        self.alphabet.iter().position(|&a| a == c).ok_or(Error::UnknownSymbol(c))
    }

    pub fn run(&self, word: &str) -> Result<usize> {
        word.chars().try_fold(self.start, |q, c| Ok(self.delta[q][self.letter_index(c)?]))
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        Ok(self.accepting[self.run(word)?])
    }

    /// States from which some accepting state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let mut live = self.accepting.clone();
        loop {
            let mut changed = false;
            for q in 0..self.size() {
                if !live[q] && self.delta[q].iter().any(|&t| live[t]) {
                    live[q] = true;
                    changed = true;
                }
            }
            if !changed {
                return live;
            }
        }
    }
}

/// Whether `word` lies in `L_n`: it ends in `a` and has at most `n + 1`
/// letters. Words with letters other than `a` and `b` are not in `L_n`.
pub fn membership_ln(n: usize, word: &str) -> bool {
    word.chars().all(|c| c == 'a' || c == 'b') && word.ends_with('a') && word.chars().count() <= n + 1
}

/// The `2n + 3`-state DFA for `L_n`: `B_k` (read `k` letters, last one `b`
/// or none), `A_k` (read `k` letters, last one `a`) and a dead state.
pub fn dfa_ln(n: usize) -> Dfa {
    // B_0..B_n, A_1..A_{n+1}, dead
    let b = |k: usize| k;
    let a = |k: usize| n + k;
    let dead = 2 * n + 2;
    let mut names: Vec<String> = (0..=n).map(|k| format!("B{k}")).collect();
    names.extend((1..=n + 1).map(|k| format!("A{k}")));
    names.push("dead".into());
    let mut delta = vec![vec![dead, dead]; 2 * n + 3];
    for k in 0..=n {
        // from B_k and A_k (k ≥ 1), the next letter is letter k + 1
        let to_a = a(k + 1);
        let to_b = if k < n { b(k + 1) } else { dead };
        delta[b(k)] = vec![to_a, to_b];
        if k >= 1 {
            delta[a(k)] = vec![to_a, to_b];
        }
    }
    let accepting = (0..2 * n + 3).map(|q| q > n && q < dead).collect();
    Dfa::new(names, vec!['a', 'b'], b(0), accepting, delta).expect("valid L_n automaton")
}
