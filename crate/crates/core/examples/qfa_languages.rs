//! The languages L_n: the minimal DFA, a reversible recognizer, and a
//! noisy variant that still recognizes L_n with bounded error.

use qrac_lab::qfa::{dfa_ln, membership_ln, noisy_rfa_ln, qfa_size_report, rfa_ln};

fn main() -> qrac_lab::Result<()> {
    let n = 3;
    let dfa = dfa_ln(n);
    let rfa = rfa_ln(n)?;
    let noisy = noisy_rfa_ln(n, 0.2)?;
    println!("L_{n}: DFA {} states, reversible QFA {} states ({} qubits)", dfa.size(), rfa.size(), qfa_size_report(&rfa).qubits);
    println!("the reversible recognizer is a permutation automaton: {}", rfa.is_reversible());
    for w in ["a", "ba", "bbba", "abbba", "ab", ""] {
        let (exact, noisy) = (rfa.run(w)?, noisy.run(w)?);
        println!(
            "  {w:>6}: member {:5}  dfa {:5}  rfa accept {:.3}  noisy accept {:.3}",
            membership_ln(n, w),
            dfa.accepts(w)?,
            exact.accept,
            noisy.accept
        );
    }
    Ok(())
}
