//! A classical random access code from a covering code and random pads,
//! verified exhaustively and compared with the entropy lower bound.

use qrac_lab::crac::{
    build_pad_family, classical_lower_bound, exact_success, greedy_covering_code, pad_scheme, PadOptions,
};

fn main() -> qrac_lab::Result<()> {
    for m in [4, 8, 12] {
        let code = greedy_covering_code(m, 1)?;
        println!("greedy radius-1 covering of {{0,1}}^{m}: {} words", code.len());
    }

    let (m, p) = (6, 0.6);
    let build = build_pad_family(m, p, &PadOptions::new(216, 7))?;
    let scheme = pad_scheme(&build)?;
    let table = exact_success(&scheme);
    println!(
        "m = {m}, p = {p}: {} pads over {} codewords, n = {} bits, attempts {}",
        build.family.ell(),
        build.code.len(),
        scheme.n(),
        build.attempts
    );
    let gap = table.rows().zip(build.table.rows()).map(|(a, b)| (a.2 - b.2).abs()).fold(0.0, f64::max);
    println!("worst (x, i) success {:.6}, largest gap to the family's own table {gap:.1e}", table.min());
    println!("entropy bound (1 - H(p)) m = {:.6}", classical_lower_bound(m, p)?);
    Ok(())
}
