//! Quantum random access codes.
//!
//! A code maps `m`-bit strings (plus an optional finite randomness register)
//! to states of `n` qubits; bit `i` is read back by a two-outcome projective
//! measurement. This module holds the 2→1 and 3→1 single-qubit codes, the
//! tensor and majority-vote combinators, exact success evaluation, and the
//! deferred-measurement experiment that extracts every bit in sequence.

mod copies;
mod extraction;
mod json;
mod scheme;

pub mod constructions;

pub use constructions::{amplify, qrac_2to1, qrac_3to1, tensor_power};
pub use copies::{majority_error, required_copies, CopiesBound};
pub use extraction::{
    sequential_extract, step_perturbation, Extraction, ExtractionOrder, Extractor, QUBIT_LIMIT,
};
pub use json::{scheme_from_json, scheme_to_json};
pub use scheme::{
    sampled_success, success_probability, BinaryDecoder, QracScheme, RandomAccessCode,
    SampledSuccess, SerialScheme, EXACT_LIMIT,
};
