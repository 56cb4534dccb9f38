//! Classical random access codes.
//!
//! The entropy lower bound, the covering-code and random-pad construction
//! that nearly meets it, exact success evaluation, and the impossibility of
//! a 2→1 classical code beating a coin flip.

mod covering;
mod entropy;
mod game;
mod pads;
mod scheme;
mod simplex;

pub use covering::{covering_size_bound_log2, greedy_covering_code, CoveringCode};
pub use entropy::{binary_entropy, classical_lower_bound};
pub use game::{best_two_into_one, quarter_miss, DecoderPointPair, Quadrant, TwoIntoOne};
pub use pads::{
    build_pad_family, pad_encode, pad_scheme, Pad, PadBuild, PadFamily, PadOptions,
};
pub use scheme::{exact_success, ClassicalRacScheme};
