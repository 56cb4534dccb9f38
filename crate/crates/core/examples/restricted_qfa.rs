//! Delaying all halting of an automaton by `r` letters without changing
//! what it accepts.

use qrac_lab::qfa::{dfa_as_qfa, dfa_ln, restrict, restricted_state_count, StateKind};

fn profile(h: &[f64]) -> String {
    h.iter().map(|p| format!("{p:.0}")).collect::<Vec<_>>().join(" ")
}

fn main() -> qrac_lab::Result<()> {
    // the DFA for L_1 embedded as a QFA rejects as soon as a word is too long
    let a = dfa_as_qfa(&dfa_ln(1))?;
    let halting = a.count(StateKind::Accept) + a.count(StateKind::Reject);
    println!("original: {} states, {halting} halting", a.size());
    for r in [0, 2, 4] {
        let b = restrict(&a, r)?;
        assert_eq!(b.size(), restricted_state_count(&a, r));
        println!("r = {r}: {} states", b.size());
        for w in ["a", "bb", "abab", "bbbbb"] {
            let (x, y) = (a.run(w)?, b.run(w)?);
            println!(
                "  {w:>5}: accept {} → {}, halted after each symbol [{}] → [{}]",
                x.accept,
                y.accept,
                profile(&x.halting_profile),
                profile(&y.halting_profile)
            );
        }
    }
    Ok(())
}
