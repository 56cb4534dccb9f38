//! Information-theoretic calculators: the Holevo quantity of a codeword
//! ensemble, the mutual information between an encoded bit and its
//! decoder's outcome, and the numeric chain from an `(m, n, p)` code to a
//! lower bound on `n`.

mod ensemble;
mod information;
mod report;

pub use ensemble::{codeword_ensemble, holevo_chi, Ensemble};
pub use information::{classical_decoding_mutual_information, decoding_mutual_information, MutualInformation};
pub use report::{bound_sweep_csv, quantum_bound_report, serial_bound_report, BoundKind, BoundReport};
