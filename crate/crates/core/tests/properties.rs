mod common;

use common::{column, random_qfa, random_scheme, random_state, rng, words};
use proptest::prelude::*;
use qrac_lab::bits::{bit, hamming, suffix_after};
use qrac_lab::bounds::{
    classical_decoding_mutual_information, codeword_ensemble, decoding_mutual_information, holevo_chi,
    quantum_bound_report, Ensemble,
};
use qrac_lab::crac::{
    binary_entropy, build_pad_family, exact_success, greedy_covering_code, pad_scheme, quarter_miss,
    ClassicalRacScheme, DecoderPointPair, PadOptions,
};
use qrac_lab::linalg::{
    apply, l1_distance, measure, random_unitary, tensor, DensityMatrix, ProjectiveMeasurement, StateVector, C64,
};
use qrac_lab::qfa::{dfa_as_qfa, restrict, Dfa};
use qrac_lab::qrac::{
    amplify, majority_error, qrac_2to1, qrac_3to1, step_perturbation, success_probability, tensor_power,
    ExtractionOrder, Extractor, RandomAccessCode,
};
use rand::Rng;

fn light() -> ProptestConfig {
    ProptestConfig::with_cases(24)
}

proptest! {
    #[test]
    fn compositions_stay_unitary(seed in any::<u64>(), dim in 1usize..9, depth in 1usize..5) {
        let mut g = rng(seed);
        let mut u = random_unitary(dim, &mut g);
        for _ in 0..depth {
            u = u.compose(&random_unitary(dim, &mut g)).unwrap();
            u = u.kron(&qrac_lab::linalg::UnitaryOp::identity(1));
        }
        prop_assert!(u.unitarity_defect() < 1e-9);
        prop_assert!(u.adjoint().compose(&u).unwrap().unitarity_defect() < 1e-9);
    }

    #[test]
    fn apply_preserves_norm(seed in any::<u64>(), dim in 1usize..17) {
        let mut g = rng(seed);
        let v = random_state(dim, &mut g);
        let w = apply(&random_unitary(dim, &mut g), &v).unwrap();
        prop_assert!((w.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn tensor_is_associative(seed in any::<u64>(), da in 1usize..5, db in 1usize..5, dc in 1usize..5) {
        let mut g = rng(seed);
        let (a, b, c) = (random_state(da, &mut g), random_state(db, &mut g), random_state(dc, &mut g));
        let left = tensor(&tensor(&a, &b), &c);
        let right = tensor(&a, &tensor(&b, &c));
        for (x, y) in left.amplitudes().iter().zip(right.amplitudes()) {
            prop_assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn tensor_index_arithmetic_is_exact(signs in prop::collection::vec(0u8..4, 21)) {
        // amplitudes ±1/2 and ±i/2 multiply without rounding
        let unit = [C64::new(0.5, 0.0), C64::new(-0.5, 0.0), C64::new(0.0, 0.5), C64::new(0.0, -0.5)];
        let state = |s: &[u8]| StateVector::new(s.iter().map(|&k| unit[k as usize]).collect()).unwrap();
        let (a, b, c) = (state(&signs[..4]), state(&signs[4..8]), state(&signs[8..12]));
        let (left, right) = (tensor(&tensor(&a, &b), &c), tensor(&a, &tensor(&b, &c)));
        prop_assert_eq!(left.amplitudes(), right.amplitudes());
    }

    #[test]
    fn measurement_preserves_probability(seed in any::<u64>(), dim in 2usize..9) {
        let mut g = rng(seed);
        let u = random_unitary(dim, &mut g);
        // group the columns of u into random outcomes
        let mut groups: Vec<(usize, Vec<Vec<C64>>)> = Vec::new();
        for j in 0..dim {
            let label = g.random_range(0..3usize);
            match groups.iter_mut().find(|(l, _)| *l == label) {
                Some((_, b)) => b.push(column(&u, j)),
                None => groups.push((label, vec![column(&u, j)])),
            }
        }
        let meas = ProjectiveMeasurement::new(dim, groups).unwrap();
        let (dist, after) = measure(&meas, &random_state(dim, &mut g)).unwrap();
        prop_assert!((dist.total() - 1.0).abs() < 1e-9);
        for v in after.values() {
            prop_assert!((v.norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn close_states_give_close_distributions(seed in any::<u64>(), dim in 2usize..9, scale in 0.0f64..0.5) {
        let mut g = rng(seed);
        let v1 = random_state(dim, &mut g);
        let noise = random_state(dim, &mut g);
        let mixed: Vec<C64> = v1.amplitudes().iter().zip(noise.amplitudes()).map(|(a, b)| a + b * scale).collect();
        let v2 = StateVector::normalized(mixed).unwrap();
        let delta = v1.distance(&v2);
        let u = random_unitary(dim, &mut g);
        let basis: Vec<StateVector> = (0..dim).map(|j| StateVector::new(column(&u, j)).unwrap()).collect();
        let meas = ProjectiveMeasurement::in_basis(&basis).unwrap();
        let (d1, _) = measure(&meas, &v1).unwrap();
        let (d2, _) = measure(&meas, &v2).unwrap();
        prop_assert!(l1_distance(&d1, &d2) <= 2.0 * delta + 1e-9);
    }
}

proptest! {
    #![proptest_config(light())]

    #[test]
    fn amplification_follows_the_binomial_tail(seed in any::<u64>(), t in prop::sample::select(vec![1usize, 3, 5])) {
        let base = random_scheme(2, 1, 1, seed);
        let before = success_probability(&base).unwrap();
        let after = success_probability(&amplify(&base, t).unwrap()).unwrap();
        for (x, i, p) in before.rows() {
            prop_assert!((after.get(x, i) - (1.0 - majority_error(1.0 - p, t))).abs() < 1e-9);
        }
    }

    #[test]
    fn tensor_power_preserves_success(seed in any::<u64>(), k in 1usize..4) {
        let base = random_scheme(2, 1, 2, seed);
        let before = success_probability(&base).unwrap();
        let power = tensor_power(&base, k).unwrap();
        prop_assert_eq!(power.n(), k * base.n());
        let after = success_probability(&power).unwrap();
        for (x, i, p) in after.rows() {
            let (block, inner) = (i / 2, i % 2);
            let sub = (x >> (2 * (k - 1 - block))) & 0b11;
            prop_assert!((p - before.get(sub, inner)).abs() < 1e-12);
        }
    }

    #[test]
    fn extraction_meets_the_hybrid_bounds(seed in any::<u64>(), m in 2usize..4, r in 1usize..3) {
        let s = random_scheme(m, 2, r, seed);
        let ex = Extractor::new(&s, ExtractionOrder::Forward).unwrap();
        let eps = ex.epsilon();
        for e in ex.run_all().unwrap() {
            prop_assert!(e.hybrid_distance <= e.distance_bound() + 1e-9);
            prop_assert!(e.failure <= e.failure_bound() + 1e-9);
        }
        for x in 0..1usize << m {
            for i in 0..m {
                for a in 0..1usize << m {
                    prop_assert!(step_perturbation(&s, x, i, a) <= 2.0 * eps + 1e-9);
                }
            }
        }
    }

    #[test]
    fn information_stays_below_chi(seed in any::<u64>(), m in 2usize..4, n in 1usize..3, r in 1usize..3) {
        let s = random_scheme(m, n, r, seed);
        let chi = holevo_chi(&codeword_ensemble(&s).unwrap());
        prop_assert!(chi <= s.qubits() as f64 + 1e-9);
        prop_assert!(chi >= -1e-9);
        for v in decoding_mutual_information(&s).unwrap().per_bit {
            prop_assert!(v <= chi + 1e-9);
        }
    }

    #[test]
    fn chi_is_bounded_by_dimension(seed in any::<u64>(), dim in 1usize..7, k in 1usize..6) {
        let mut g = rng(seed);
        let raw: Vec<f64> = (0..k).map(|_| g.random_range(0.05..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let members = raw
            .iter()
            .map(|w| {
                // random spectrum in a random basis
                let spec: Vec<f64> = (0..dim).map(|_| g.random_range(0.0..1.0)).collect();
                let z: f64 = spec.iter().sum();
                let u = random_unitary(dim, &mut g);
                let parts: Vec<_> = (0..dim)
                    .map(|j| (spec[j] / z, DensityMatrix::pure(&StateVector::new(column(&u, j)).unwrap())))
                    .collect();
                (w / total, DensityMatrix::mixture(&parts).unwrap())
            })
            .collect();
        let chi = holevo_chi(&Ensemble::new(members).unwrap());
        prop_assert!(chi <= (dim as f64).log2() + 1e-9);
        prop_assert!(chi >= -1e-9);
    }

    #[test]
    fn classical_information_fits_in_n_bits(seed in any::<u64>(), m in 1usize..6, n in 1usize..4) {
        let mut g = rng(seed);
        let (re, rd) = (g.random_range(1..3usize), g.random_range(1..3usize));
        let enc = (0..1usize << m).map(|_| (0..re).map(|_| g.random_range(0..1usize << n)).collect()).collect();
        let dec = (0..m)
            .map(|_| (0..rd).map(|_| (0..1usize << n).map(|_| g.random::<bool>()).collect()).collect())
            .collect();
        let s = ClassicalRacScheme::new(m, n, vec![1.0 / re as f64; re], enc, vec![1.0 / rd as f64; rd], dec).unwrap();
        prop_assert!(classical_decoding_mutual_information(&s).unwrap().total <= n as f64 + 1e-9);
    }

    #[test]
    fn pad_codes_respect_the_entropy_bound(seed in 0u64..1000, m in 4usize..7, p in 0.55f64..0.8) {
        let build = match build_pad_family(m, p, &PadOptions::new(48 * m, seed)) {
            Ok(b) => b,
            Err(_) => return Ok(()),
        };
        let scheme = pad_scheme(&build).unwrap();
        let table = exact_success(&scheme);
        prop_assert!(table.min() >= p - 1e-12);
        let bound = (1.0 - binary_entropy(table.min()).unwrap()) * m as f64;
        prop_assert!(scheme.n() as f64 >= bound.floor());
        // per-bit errors for one x differ by at most the recorded deviation
        for x in 0..1usize << m {
            let vals: Vec<f64> = (0..m).map(|i| table.get(x, i)).collect();
            let spread = vals.iter().cloned().fold(f64::MIN, f64::max) - vals.iter().cloned().fold(f64::MAX, f64::min);
            prop_assert!(spread <= build.deviation_bound + 1e-12);
        }
    }

    #[test]
    fn restriction_preserves_verdicts(seed in any::<u64>(), k in 2usize..5, r in 0usize..3) {
        let a = random_qfa(k, seed);
        let b = restrict(&a, r).unwrap();
        for w in words(&['a', 'b'], r + 3) {
            let (x, y) = (a.run(&w).unwrap(), b.run(&w).unwrap());
            prop_assert!((x.accept + x.reject + x.residual - 1.0).abs() < 1e-9);
            prop_assert!((y.accept + y.reject + y.residual - 1.0).abs() < 1e-9);
            prop_assert!((x.accept - y.accept).abs() < 1e-9);
            prop_assert!((x.reject - y.reject).abs() < 1e-9);
            let guarded = (r + 1).min(w.len() + 1);
            prop_assert!(y.halting_profile[..guarded].iter().all(|h| *h < 1e-12));
        }
    }

    #[test]
    fn permutation_dfas_embed_exactly(seed in any::<u64>(), k in 1usize..6) {
        let mut g = rng(seed);
        let perm = |g: &mut rand_chacha::ChaCha8Rng| {
            let mut p: Vec<usize> = (0..k).collect();
            for i in (1..k).rev() {
                p.swap(i, g.random_range(0..=i));
            }
            p
        };
        let (pa, pb) = (perm(&mut g), perm(&mut g));
        let delta = (0..k).map(|q| vec![pa[q], pb[q]]).collect();
        let accepting = (0..k).map(|_| g.random::<bool>()).collect();
        let names = (0..k).map(|q| format!("s{q}")).collect();
        let d = Dfa::new(names, vec!['a', 'b'], 0, accepting, delta).unwrap();
        let q = dfa_as_qfa(&d).unwrap();
        prop_assert!(q.is_reversible());
        for w in words(&['a', 'b'], 6) {
            let want = if d.accepts(&w).unwrap() { 1.0 } else { 0.0 };
            prop_assert_eq!(q.run(&w).unwrap().accept, want);
        }
    }
}

#[test]
fn greedy_codes_cover_everything() {
    for m in 1..=12 {
        for radius in 0..=m.min(3) {
            let code = greedy_covering_code(m, radius).unwrap();
            for x in 0..1usize << m {
                assert!(code.codewords().iter().any(|&c| hamming(c, x) as usize <= radius), "m = {m}");
            }
        }
    }
}

#[test]
fn random_segments_miss_a_quadrant() {
    let mut g = rng(11);
    for _ in 0..10_000 {
        let p0 = (g.random::<f64>(), g.random::<f64>());
        let p1 = (g.random::<f64>(), g.random::<f64>());
        if p0 != p1 {
            assert!(!quarter_miss(&DecoderPointPair::new(p0, p1).unwrap()).is_empty());
        }
    }
}

#[test]
fn bound_reports_are_monotone() {
    for p in [0.6, 0.85, 0.99] {
        let mut last = 0;
        for m in (2..3000).chain([1 << 14, 1 << 16, 1 << 18]) {
            let v = quantum_bound_report(m, 0, p).unwrap().implied_min_n;
            assert!(v >= last, "m = {m}, p = {p}");
            last = v;
        }
    }
}

#[test]
fn builtin_schemes_keep_their_invariants() {
    for s in [qrac_2to1(), qrac_3to1(), amplify(&qrac_2to1(), 3).unwrap(), tensor_power(&qrac_3to1(), 2).unwrap()] {
        for x in 0..1usize << s.m() {
            let total: f64 = s.weights().iter().sum();
            assert!((total - 1.0).abs() < 1e-12);
            for r in 0..s.weights().len() {
                assert!((s.codeword(x, r).norm() - 1.0).abs() < 1e-9);
            }
        }
        let _ = (bit(0, 1, 0), suffix_after(0, 1, 0));
    }
}
