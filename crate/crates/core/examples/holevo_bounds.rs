//! Information bounds: the Holevo quantity of code ensembles, the
//! information each decoder extracts, and the chain that turns a
//! hypothetical code into a lower bound on its length.

use qrac_lab::bounds::{codeword_ensemble, decoding_mutual_information, holevo_chi, quantum_bound_report};
use qrac_lab::qrac::{qrac_2to1, qrac_3to1, tensor_power, RandomAccessCode};

fn main() -> qrac_lab::Result<()> {
    for (name, s) in [("2→1", qrac_2to1()), ("3→1", qrac_3to1()), ("(2→1)⊗2", tensor_power(&qrac_2to1(), 2)?)] {
        let chi = holevo_chi(&codeword_ensemble(&s)?);
        let mi = decoding_mutual_information(&s)?;
        println!("{name}: χ = {chi:.6} on {} qubit(s), per-bit information {:.6}, total {:.6}", s.qubits(), mi.bit(0), mi.total);
    }
    println!();
    for m in [100, 1 << 10, 1 << 16] {
        print!("{}", quantum_bound_report(m, 64, 0.85)?.to_text());
    }
    Ok(())
}
