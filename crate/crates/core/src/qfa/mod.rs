//! One-way quantum finite automata.
//!
//! An automaton reads `^` (the left end marker), the input letters and `$`
//! (the right end marker). Each symbol applies a unitary and then measures
//! whether the state lies in the accepting, rejecting or non-halting span.
//! This module holds the semantics, the language `L_n` of words of length
//! at most `n + 1` ending in `a`, reversible recognizers for it, the
//! transformation that delays all halting by `r` letters, and the serial
//! code read off a restricted automaton.

mod automaton;
mod complete;
mod dfa;
mod json;
mod restrict;
mod reversible;
mod serial;

pub use automaton::{Qfa, RunResult, StateKind, CENT, DOLLAR};
pub use complete::{complete_isometry, complete_permutation};
pub use dfa::{dfa_ln, membership_ln, Dfa};
pub use restrict::{restrict, restricted_state_count};
pub use reversible::{dfa_as_qfa, noisy_rfa_ln, rfa_ln, rfa_ln_state_count};
pub use serial::{
    bits_to_word, check_restricted, qfa_size_report, serial_from_qfa, word_to_bits, SizeReport,
};
