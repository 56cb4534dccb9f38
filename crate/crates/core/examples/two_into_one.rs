//! The 2→1 and 3→1 quantum random access codes: exact success of every
//! decoder on every string, and a JSON round trip of the scheme.

use qrac_lab::bits::format_bits;
use qrac_lab::qrac::{qrac_2to1, qrac_3to1, scheme_from_json, scheme_to_json, success_probability, RandomAccessCode};

fn main() -> qrac_lab::Result<()> {
    for (name, s) in [("2→1", qrac_2to1()), ("3→1", qrac_3to1())] {
        let table = success_probability(&s)?;
        println!("{name} code on {} qubit(s):", s.qubits());
        for x in 0..1usize << s.m() {
            let row: Vec<String> = (0..s.m()).map(|i| format!("{:.6}", table.get(x, i))).collect();
            println!("  x = {}  {}", format_bits(x, s.m()), row.join("  "));
        }
        println!("  worst case {:.10}\n", table.min());
    }

    // codewords of the 3→1 code need complex amplitudes
    let s = qrac_3to1();
    let back = scheme_from_json(&scheme_to_json(&s)?)?;
    let same = (0..8).all(|x| s.codeword(x, 0) == back.codeword(x, 0));
    println!("JSON round trip reproduces every codeword bit for bit: {same}");
    Ok(())
}
