//! A restricted automaton for L_n holds a serial random access code for
//! n bits: bit i is read by undoing the later letters and applying `$`.

use qrac_lab::qfa::{bits_to_word, noisy_rfa_ln, rfa_ln, serial_from_qfa};
use qrac_lab::qrac::{success_probability, ExtractionOrder, Extractor, RandomAccessCode};

fn main() -> qrac_lab::Result<()> {
    let n = 4;
    let exact = serial_from_qfa(&rfa_ln(n)?, n)?;
    println!("reversible recognizer: worst bit success {}", success_probability(&exact)?.min());

    let theta: f64 = 0.3;
    let noisy = serial_from_qfa(&noisy_rfa_ln(n, theta)?, n)?;
    let table = success_probability(&noisy)?;
    println!("noisy recognizer (accepts L_n with probability {:.4}): worst bit success {:.4}", theta.cos().powi(2), table.min());
    println!("the code lives on {} qubits", noisy.qubits());

    let x = 0b1011;
    let e = Extractor::new(&noisy, ExtractionOrder::Reverse)?.run(x)?;
    println!(
        "reading all of {} last bit first: failure {:.4} ≤ {:.4}",
        bits_to_word(x, n),
        e.failure,
        e.failure_bound()
    );
    Ok(())
}
