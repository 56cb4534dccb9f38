//! Majority-vote amplification: simulate `t` copies of the 2→1 code and
//! compare the per-bit error with the binomial tail.

use qrac_lab::qrac::{amplify, majority_error, qrac_2to1, required_copies, success_probability, CopiesBound};

fn main() -> qrac_lab::Result<()> {
    let base = qrac_2to1();
    let q = 1.0 - success_probability(&base)?.min();
    println!("single copy error q = sin²(π/8) = {q:.12}");
    println!("  t   simulated error   binomial tail");
    for t in [1, 3, 5, 7] {
        let sim = success_probability(&amplify(&base, t)?)?.epsilon();
        println!("  {t}   {sim:.12}    {:.12}", majority_error(q, t));
    }

    let p = 1.0 - q;
    for eps in [0.03, 1e-3, 1e-6] {
        let h = required_copies(p, eps, CopiesBound::Hoeffding)?;
        let exact = required_copies(p, eps, CopiesBound::ExactBinomial)?;
        println!("error ≤ {eps:e}: {h} copies by Hoeffding, {exact} by the exact tail");
    }
    Ok(())
}
