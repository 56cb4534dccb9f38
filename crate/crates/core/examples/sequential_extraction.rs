//! Recover every bit of `x` from one copy of an amplified code by
//! deferring all measurements, and compare with the hybrid-argument bounds.

use qrac_lab::bits::format_bits;
use qrac_lab::qrac::{amplify, qrac_2to1, step_perturbation, tensor_power, ExtractionOrder, Extractor};

fn main() -> qrac_lab::Result<()> {
    for k in 1..=3 {
        let s = amplify(&tensor_power(&qrac_2to1(), k)?, 3)?;
        let ex = Extractor::new(&s, ExtractionOrder::Forward)?;
        let m = s.m();
        let worst = ex
            .run_all()?
            .into_iter()
            .max_by(|a, b| a.failure.total_cmp(&b.failure))
            .expect("at least one string");
        println!(
            "m = {m}: ε = {:.5}, worst x = {}, failure {:.5} ≤ 4m√ε = {:.5}, distance {:.5} ≤ 2m√ε = {:.5}",
            ex.epsilon(),
            format_bits(worst.x, m),
            worst.failure,
            worst.failure_bound(),
            worst.hybrid_distance,
            worst.distance_bound(),
        );
    }

    let s = amplify(&qrac_2to1(), 3)?;
    let eps = Extractor::new(&s, ExtractionOrder::Forward)?.epsilon();
    let d = step_perturbation(&s, 0b10, 0, 0);
    println!("one decoding step moves the state by {d:.6} (squared), at most 2ε = {:.6}", 2.0 * eps);
    Ok(())
}
