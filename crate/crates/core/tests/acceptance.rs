//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//! Reference values come from closed forms or independent computations
//! in this file, not from the library.

mod common;

use std::time::Instant;

use common::cli_cases::{golden_path, run_case, CASES};
use common::{random_qfa, random_scheme, rng, words};
use num_rational::Rational64;
use qrac_lab::bits::hamming;
use qrac_lab::bounds::{
    classical_decoding_mutual_information, codeword_ensemble, decoding_mutual_information, holevo_chi,
};
use qrac_lab::crac::{
    best_two_into_one, binary_entropy, build_pad_family, exact_success, greedy_covering_code, pad_scheme,
    quarter_miss, ClassicalRacScheme, DecoderPointPair, PadOptions,
};
use qrac_lab::qfa::{dfa_ln, noisy_rfa_ln, restrict, rfa_ln, serial_from_qfa, Qfa, StateKind};
use qrac_lab::qrac::{
    amplify, qrac_2to1, qrac_3to1, success_probability, tensor_power, ExtractionOrder, Extractor, QracScheme,
    RandomAccessCode,
};
use rand::Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(label: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    check((got - want).abs() <= tol, || format!("{label}: got {got:.15}, want {want:.15} (tol {tol:e})"))
}

fn timed(label: &str, limit_s: f64, start: Instant) -> Result<f64, String> {
    let secs = start.elapsed().as_secs_f64();
    check(secs < limit_s, || format!("{label} took {secs:.2} s, limit {limit_s} s"))?;
    Ok(secs)
}

/// `P(Bin(t, q) > t/2)` by direct summation.
fn binomial_majority_error(q: f64, t: u32) -> f64 {
    let choose = |n: u32, k: u32| (1..=k).fold(1.0f64, |acc, j| acc * f64::from(n - k + j) / f64::from(j));
    (t / 2 + 1..=t).map(|k| choose(t, k) * q.powi(k as i32) * (1.0 - q).powi((t - k) as i32)).sum()
}

fn c1() -> Outcome {
    let start = Instant::now();
    let table = success_probability(&qrac_2to1()).map_err(|e| e.to_string())?;
    let want = (std::f64::consts::PI / 8.0).cos().powi(2);
    for (x, i, p) in table.rows() {
        within(&format!("x={x:02b}, i={i}"), p, want, 1e-9)?;
    }
    let secs = timed("2→1 evaluation", 1.0, start)?;
    Ok(format!("all 8 successes = cos²(π/8) = {want:.10} ({secs:.3} s)"))
}

fn c2() -> Outcome {
    let s = qrac_3to1();
    let table = success_probability(&s).map_err(|e| e.to_string())?;
    let want = (1.0 + 1.0 / 3f64.sqrt()) / 2.0;
    for (x, i, p) in table.rows() {
        within(&format!("x={x:03b}, i={i}"), p, want, 1e-9)?;
    }
    let complex = (0..8).any(|x| s.codeword(x, 0).amplitudes().iter().any(|z| z.im.abs() > 1e-6));
    check(complex, || "no codeword has a non-zero imaginary part".into())?;
    Ok(format!("all 24 successes = (1+1/√3)/2 = {want:.10}, complex amplitudes present"))
}

fn c3() -> Outcome {
    let g = best_two_into_one();
    check(g.value == Rational64::new(1, 2), || format!("game value {} ≠ 1/2", g.value))?;
    let mut r = rng(2024);
    let mut fewest = usize::MAX;
    for _ in 0..10_000 {
        let p0 = (r.random::<f64>(), r.random::<f64>());
        let p1 = (r.random::<f64>(), r.random::<f64>());
        let pp = DecoderPointPair::new(p0, p1).map_err(|e| e.to_string())?;
        fewest = fewest.min(quarter_miss(&pp).len());
    }
    check(fewest >= 1, || "a random decoder segment visits all four quadrants".into())?;
    Ok(format!("exact optimum {} (rational); 10000 random pairs each miss ≥ {fewest} quadrant", g.value))
}

fn c4() -> Outcome {
    let start = Instant::now();
    let base = qrac_2to1();
    let q = (std::f64::consts::PI / 8.0).sin().powi(2);
    let mut t5 = 0.0;
    for t in [3u32, 5, 7] {
        let s = amplify(&base, t as usize).map_err(|e| e.to_string())?;
        let table = success_probability(&s).map_err(|e| e.to_string())?;
        let want = binomial_majority_error(q, t);
        for (x, i, p) in table.rows() {
            within(&format!("t={t}, x={x:02b}, i={i}"), 1.0 - p, want, 1e-9)?;
        }
        if t == 5 {
            t5 = table.epsilon();
        }
    }
    // Σ_{k≥3} C(5,k) q^k (1−q)^{5−k} at q = sin²(π/8), evaluated with mpmath at 50 digits
    within("t=5 error vs high-precision oracle", t5, 0.0249126313902884, 1e-9)?;
    let secs = timed("amplification", 10.0, start)?;
    let literal = 0.0266105;
    Ok(format!(
        "t ∈ {{3,5,7}} match the binomial tail; t=5 error {t5:.10} (spec literal {literal} is off by {:.1e}, not reproducible) ({secs:.2} s)",
        (t5 - literal).abs()
    ))
}

fn c5() -> Outcome {
    let block = amplify(&qrac_2to1(), 3).map_err(|e| e.to_string())?;
    let mut worst = Vec::new();
    let mut eps = 0.0;
    for k in 1..=3 {
        let s = tensor_power(&block, k).map_err(|e| e.to_string())?;
        let ex = Extractor::new(&s, ExtractionOrder::Forward).map_err(|e| e.to_string())?;
        eps = ex.epsilon();
        let mut w: f64 = 0.0;
        for e in ex.run_all().map_err(|e| e.to_string())? {
            check(e.failure <= e.failure_bound() + 1e-9, || format!("m={}, x={}: failure {} > 4m√ε", e.m, e.x, e.failure))?;
            check(e.hybrid_distance <= e.distance_bound() + 1e-9, || {
                format!("m={}, x={}: distance {} > 2m√ε", e.m, e.x, e.hybrid_distance)
            })?;
            w = w.max(e.failure);
        }
        worst.push(w);
    }
    // at most linear growth: f(m)/m does not increase
    for k in 1..worst.len() {
        let (a, b) = (worst[k - 1] / (2 * k) as f64, worst[k] / (2 * (k + 1)) as f64);
        check(b <= a + 1e-9, || format!("failure per bit rose from {a:.6} to {b:.6}"))?;
    }
    Ok(format!(
        "ε = {eps:.6}; worst failures {:.5}/{:.5}/{:.5} for m = 2/4/6 within 4m√ε, slope non-increasing",
        worst[0], worst[1], worst[2]
    ))
}

fn c6() -> Outcome {
    let start = Instant::now();
    let (m, p) = (6, 0.6);
    let opts = PadOptions::new(216, 7);
    let build = build_pad_family(m, p, &opts).map_err(|e| e.to_string())?;
    let again = build_pad_family(m, p, &opts).map_err(|e| e.to_string())?;
    check(build.family.to_json().ok() == again.family.to_json().ok(), || "same seed gave a different family".into())?;
    let scheme = pad_scheme(&build).map_err(|e| e.to_string())?;
    let table = exact_success(&scheme);
    check(table.min() >= p, || format!("min success {} < {p}", table.min()))?;
    let p_exact = table.min();
    let h = -p_exact * p_exact.log2() - (1.0 - p_exact) * (1.0 - p_exact).log2();
    let bound = (1.0 - h) * m as f64;
    check(scheme.n() as f64 >= bound.floor(), || format!("n = {} below (1-H(p))m = {bound}", scheme.n()))?;
    within("binary entropy", binary_entropy(p_exact).map_err(|e| e.to_string())?, h, 1e-12)?;
    let mut codes = 0;
    for mm in 1..=12 {
        for radius in 0..=mm {
            let code = greedy_covering_code(mm, radius).map_err(|e| e.to_string())?;
            let covered = (0..1usize << mm).all(|x| code.codewords().iter().any(|&c| hamming(c, x) as usize <= radius));
            check(covered, || format!("greedy code m={mm}, r={radius} leaves a word uncovered"))?;
            codes += 1;
        }
    }
    let secs = timed("classical construction", 60.0, start)?;
    Ok(format!(
        "seed 7 family verified: min {p_exact:.6} ≥ {p}, n = {} ≥ {bound:.4}; {codes} greedy codes cover ({secs:.2} s)",
        scheme.n()
    ))
}

/// Words of length ≤ n + 1 ending in `a`.
fn in_ln(n: usize, w: &str) -> bool {
    w.len() <= n + 1 && w.ends_with('a')
}

fn c7() -> Outcome {
    for n in 1..=8 {
        let dfa = dfa_ln(n);
        check(dfa.size() == 2 * n + 3, || format!("dfa_ln({n}) has {} states", dfa.size()))?;
        let rfa = rfa_ln(n).map_err(|e| e.to_string())?;
        check(rfa.is_reversible(), || format!("rfa_ln({n}) is not a permutation automaton"))?;
        for w in words(&['a', 'b'], n + 2) {
            let member = in_ln(n, &w);
            check(dfa.accepts(&w).map_err(|e| e.to_string())? == member, || format!("dfa_ln({n}) wrong on {w:?}"))?;
            let run = rfa.run(&w).map_err(|e| e.to_string())?;
            let want = if member { 1.0 } else { 0.0 };
            check(run.accept == want && run.reject == 1.0 - want, || format!("rfa_ln({n}) on {w:?}: {run:?}"))?;
        }
    }
    Ok("dfa_ln(n) has 2n+3 states and rfa_ln(n) decides L_n with certainty on all words ≤ n+2, n ≤ 8".into())
}

fn c8() -> Outcome {
    let mut suite: Vec<(String, Qfa, usize)> = Vec::new();
    for seed in 0..6u64 {
        suite.push((format!("random(seed {seed})"), random_qfa(3 + seed as usize % 3, seed), 5));
    }
    suite.push(("rfa_ln(2)".into(), rfa_ln(2).map_err(|e| e.to_string())?, 4));
    suite.push(("noisy_rfa_ln(2)".into(), noisy_rfa_ln(2, 0.35).map_err(|e| e.to_string())?, 4));
    let mut checked = 0;
    for (name, a, max_len) in &suite {
        let halting = a.kinds().iter().filter(|k| **k != StateKind::NonHalting).count();
        for r in 0..=3 {
            let b = restrict(a, r).map_err(|e| e.to_string())?;
            let want = a.size() + 2 * (r + 2) * halting;
            check(b.size() == want, || format!("{name}, r={r}: {} states, formula {want}", b.size()))?;
            for w in words(&['a', 'b'], *max_len) {
                let (x, y) = (a.run(&w).map_err(|e| e.to_string())?, b.run(&w).map_err(|e| e.to_string())?);
                within(&format!("{name}, r={r}, {w:?} accept"), y.accept, x.accept, 1e-9)?;
                within(&format!("{name}, r={r}, {w:?} reject"), y.reject, x.reject, 1e-9)?;
                let early = y.halting_profile[..(r + 1).min(w.len() + 1)].iter().cloned().fold(0.0, f64::max);
                check(early == 0.0, || format!("{name}, r={r}, {w:?}: halts with {early} within r letters"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{} automata × r ∈ 0..=3: state counts, acceptance and early halting agree on {checked} runs", suite.len()))
}

fn c9() -> Outcome {
    for n in 1..=8 {
        let s = serial_from_qfa(&rfa_ln(n).map_err(|e| e.to_string())?, n).map_err(|e| e.to_string())?;
        let table = success_probability(&s).map_err(|e| e.to_string())?;
        check((table.min() - 1.0).abs() < 1e-9, || format!("rfa_ln({n}): min success {}", table.min()))?;
    }
    let mut lines = Vec::new();
    for (n, theta) in [(2, 0.2), (3, 0.5), (4, 0.35)] {
        let a = noisy_rfa_ln(n, theta).map_err(|e| e.to_string())?;
        // recognition probability over every word the serial code can see
        let mut p: f64 = 1.0;
        for w in words(&['a', 'b'], n + 1) {
            let run = a.run(&w).map_err(|e| e.to_string())?;
            p = p.min(if in_ln(n, &w) { run.accept } else { run.reject });
        }
        let s = serial_from_qfa(&a, n).map_err(|e| e.to_string())?;
        let table = success_probability(&s).map_err(|e| e.to_string())?;
        check(table.min() >= p - 1e-9, || format!("noisy n={n}: decoding {} < recognition {p}", table.min()))?;
        lines.push(format!("n={n}: {:.4} ≥ {p:.4}", table.min()));
    }
    Ok(format!("rfa_ln(n) decodes every bit with certainty for n ≤ 8; noisy {}", lines.join(", ")))
}

fn c10() -> Outcome {
    let mut quantum: Vec<(String, QracScheme)> = vec![
        ("2→1".into(), qrac_2to1()),
        ("3→1".into(), qrac_3to1()),
        ("2→1 ×3".into(), amplify(&qrac_2to1(), 3).map_err(|e| e.to_string())?),
        ("(2→1)⊗2".into(), tensor_power(&qrac_2to1(), 2).map_err(|e| e.to_string())?),
        ("(3→1)⊗2".into(), tensor_power(&qrac_3to1(), 2).map_err(|e| e.to_string())?),
    ];
    for seed in 0..8 {
        quantum.push((format!("random {seed}"), random_scheme(2 + seed as usize % 2, 1 + seed as usize % 3, 1 + seed as usize % 2, seed)));
    }
    let mut worst_gap = f64::INFINITY;
    for (name, s) in &quantum {
        let chi = holevo_chi(&codeword_ensemble(s).map_err(|e| e.to_string())?);
        check(chi <= s.qubits() as f64 + 1e-9, || format!("{name}: χ = {chi} above {} qubits", s.qubits()))?;
        for (i, v) in decoding_mutual_information(s).map_err(|e| e.to_string())?.per_bit.iter().enumerate() {
            check(*v <= chi + 1e-9, || format!("{name}: I(X_{i}:Z_{i}) = {v} above χ = {chi}"))?;
            worst_gap = worst_gap.min(chi - v);
        }
    }
    // 2→1: each bit sees a binary symmetric channel with crossover sin²(π/8)
    let mi = decoding_mutual_information(&qrac_2to1()).map_err(|e| e.to_string())?;
    within("2→1 information", mi.bit(0), 0.399123963307144, 1e-9)?;

    let mut classical = Vec::new();
    for (m, p, seed) in [(5, 0.7, 1u64), (6, 0.6, 7)] {
        let build = build_pad_family(m, p, &PadOptions::new(36 * m, seed)).map_err(|e| e.to_string())?;
        classical.push(pad_scheme(&build).map_err(|e| e.to_string())?);
    }
    let mut g = rng(99);
    for _ in 0..6 {
        let (m, n) = (g.random_range(1..6usize), g.random_range(1..4usize));
        let enc = (0..1usize << m).map(|_| vec![g.random_range(0..1usize << n)]).collect();
        let dec = (0..m).map(|_| vec![(0..1usize << n).map(|_| g.random::<bool>()).collect()]).collect();
        classical.push(ClassicalRacScheme::new(m, n, vec![1.0], enc, vec![1.0], dec).map_err(|e| e.to_string())?);
    }
    for s in &classical {
        let total = classical_decoding_mutual_information(s).map_err(|e| e.to_string())?.total;
        check(total <= s.n() as f64 + 1e-9, || format!("classical m={}, n={}: Σ I = {total}", s.m(), s.n()))?;
    }
    Ok(format!(
        "{} quantum codes: χ ≤ qubits, I ≤ χ (closest margin {worst_gap:.3e}); {} classical codes: Σ I ≤ n",
        quantum.len(),
        classical.len()
    ))
}

fn c11() -> Outcome {
    let mut seeded = 0;
    for c in CASES {
        let (first, second) = (run_case(c), run_case(c));
        check(first == second, || format!("{}: two runs differ", c.name))?;
        check(first.0 == c.exit, || format!("{}: exit {} instead of {}", c.name, first.0, c.exit))?;
        let want = std::fs::read_to_string(golden_path(c.name)).map_err(|e| format!("{}: {e}", c.name))?;
        check(want == first.1, || format!("{}: output differs from its golden file", c.name))?;
        seeded += usize::from(c.args.contains(&"--seed"));
    }
    Ok(format!("{} CLI cases ({seeded} seeded) byte-identical across runs and equal to golden files", CASES.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("2→1 QRAC success", c1),
        ("3→1 QRAC success", c2),
        ("classical 2→1 impossibility", c3),
        ("majority amplification", c4),
        ("hybrid-argument bounds", c5),
        ("classical pad construction", c6),
        ("QFA semantics for L_n", c7),
        ("restricted transformation", c8),
        ("serial codes from automata", c9),
        ("information bounds", c10),
        ("CLI determinism", c11),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{secs:.2} s]: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{secs:.2} s]: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
