use std::path::Path;

use num_rational::Rational64;
use serde_json::{json, Value};

use super::output::{Report, Table};
use super::{BoundsCommand, Cli, Command, CracCommand, Failure, QfaCommand, QracArgs, SchemeArgs};
use super::{EXIT_INFEASIBLE, EXIT_OK, EXIT_VERIFICATION};
use crate::bits::{ceil_log2, format_bits, parse_bits};
use crate::bounds::{
    codeword_ensemble, decoding_mutual_information, holevo_chi, quantum_bound_report, serial_bound_report,
    BoundReport,
};
use crate::crac::{
    best_two_into_one, binary_entropy, build_pad_family, classical_lower_bound, exact_success, pad_scheme,
    quarter_miss, PadOptions, Quadrant,
};
use crate::error::{Error, Result};
use crate::qfa::{
    bits_to_word, dfa_as_qfa, dfa_ln, noisy_rfa_ln, restrict, restricted_state_count, rfa_ln, rfa_ln_state_count,
    serial_from_qfa, Dfa, Qfa,
};
use crate::qrac::{
    amplify, qrac_2to1, qrac_3to1, sampled_success, scheme_from_json, scheme_to_json, success_probability,
    tensor_power, ExtractionOrder, Extractor, QracScheme, RandomAccessCode, EXACT_LIMIT,
};

/// Longest serial code the CLI tabulates.
const SERIAL_CLI_LIMIT: usize = 8;
const SIZES_LIMIT: usize = 40;
const DEFAULT_SAMPLES: usize = 256;

pub(crate) fn execute(cli: &Cli) -> std::result::Result<(Report, u8), Failure> {
    let done = match &cli.command {
        Command::Qrac(args) => qrac(args, cli.seed),
        Command::Crac(c) => crac(c, cli.seed),
        Command::Qfa(c) => qfa(c),
        Command::Bounds(c) => bounds(c),
    };
    done.map_err(Failure::from)
}

fn ratio(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    Ok(std::fs::write(path, text)?)
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Format(format!("cannot read {path:?}: {}", e.kind())))
}

fn load_scheme(args: &SchemeArgs) -> Result<(QracScheme, String)> {
    let mut label = args.kind.clone();
    let mut s = match args.kind.as_str() {
        "2to1" => qrac_2to1(),
        "3to1" => qrac_3to1(),
        path => scheme_from_json(&read_file(path)?)?,
    };
    if let Some(k) = args.tensor {
        s = tensor_power(&s, k)?;
        label.push_str(&format!(" --tensor {k}"));
    }
    if let Some(t) = args.amplify {
        s = amplify(&s, t)?;
        label.push_str(&format!(" --amplify {t}"));
    }
    Ok((s, label))
}

fn qrac(args: &QracArgs, seed: u64) -> Result<(Report, u8)> {
    let (s, label) = load_scheme(&args.scheme)?;
    let m = s.m();
    let mut r = Report::new(format!("qrac {label}"));
    r.field("m", m).field("n", s.n()).field("ancilla", s.ancilla()).field("randomness", s.randomness_len());
    let mut code = EXIT_OK;
    if args.samples.is_some() || m > EXACT_LIMIT {
        if args.table {
            return Err(Error::InvalidParameter("--table needs exact evaluation; drop --samples".into()));
        }
        let samples = args.samples.unwrap_or(DEFAULT_SAMPLES);
        let sampled = sampled_success(&s, samples, seed);
        r.field("evaluation", "sampled").field("samples", samples).field("seed", seed);
        r.field("min_success", sampled.min).field("mean_success", sampled.mean);
    } else {
        let table = success_probability(&s)?;
        r.field("evaluation", "exact").field("min_success", table.min()).field("max_success", table.max());
        r.field("per_bit_error", table.epsilon());
        if args.table {
            let mut t = Table::new("success", &["x", "i", "probability"]);
            for (x, i, p) in table.rows() {
                t.push(vec![format_bits(x, m).into(), i.into(), p.into()]);
            }
            r.table(t);
        }
    }
    if let Some(bits) = &args.extract {
        if bits.len() != m {
            return Err(Error::InvalidParameter(format!("--extract needs {m} bits, got {:?}", bits)));
        }
        let x = parse_bits(bits)?;
        let e = Extractor::new(&s, ExtractionOrder::Forward)?.run(x)?;
        r.field("extract", bits.as_str()).field("epsilon", e.epsilon);
        r.field("failure", e.failure).field("failure_bound", e.failure_bound());
        r.field("hybrid_distance", e.hybrid_distance).field("distance_bound", e.distance_bound());
        let mut t = Table::new("extraction", &["answer", "probability"]);
        for (a, p) in e.distribution.iter().filter(|(_, p)| *p > 1e-15) {
            t.push(vec![format_bits(a, m).into(), p.into()]);
        }
        r.table(t);
        if e.failure > e.failure_bound() + 1e-9 || e.hybrid_distance > e.distance_bound() + 1e-9 {
            r.note("extraction exceeds the 4m√ε / 2m√ε bounds");
            code = EXIT_VERIFICATION;
        }
    }
    if let Some(path) = &args.export {
        write_file(path, &scheme_to_json(&s)?)?;
        r.field("exported", path.display().to_string());
    }
    Ok((r, code))
}

fn crac(c: &CracCommand, seed: u64) -> Result<(Report, u8)> {
    match c {
        CracCommand::Build { m, p, ell, max_attempts, family, code, table } => {
            let (m, p) = (*m, *p);
            let opts = PadOptions { target_ell: ell.unwrap_or(36 * m), seed, max_attempts: *max_attempts };
            let build = build_pad_family(m, p, &opts)?;
            let scheme = pad_scheme(&build)?;
            let verified = exact_success(&scheme);
            let mut r = Report::new(format!("crac build {m} {p}"));
            r.field("m", m).field("p", p).field("seed", seed).field("ell", build.family.ell());
            r.field("radius", build.code.radius()).field("codewords", build.code.len());
            r.field("attempts", build.attempts).field("n", scheme.n());
            r.field("log2_ell_codewords", build.code_length_log2());
            r.field("min_success", verified.min());
            let mut status = EXIT_OK;
            if verified.min() < p - 1e-12 {
                r.note("exhaustive check of the built scheme falls below p");
                status = EXIT_VERIFICATION;
            }
            if p > 0.5 {
                let lower = classical_lower_bound(m, p)?;
                r.field("lower_bound", lower).field("upper_reference", lower + 7.0 * (m as f64).log2());
            } else {
                r.note("p ≤ 1/2: any code works and the entropy bound is vacuous");
            }
            if scheme.n() >= m {
                r.note("at this m the pad code is no shorter than writing x down");
            }
            if p > 1.0 - 1.0 / m as f64 {
                r.note("p > 1 - 1/m: no covering radius applies, using the identity encoding");
            }
            if *table {
                let mut t = Table::new("success", &["x", "i", "probability"]);
                for (x, i, q) in verified.rows() {
                    t.push(vec![format_bits(x, m).into(), i.into(), q.into()]);
                }
                r.table(t);
            }
            if let Some(path) = family {
                write_file(path, &build.family.to_json()?)?;
            }
            if let Some(path) = code {
                write_file(path, &build.code.to_json()?)?;
            }
            Ok((r, status))
        }
        CracCommand::LowerBound { m, p } => {
            let mut r = Report::new(format!("crac lower-bound {m} {p}"));
            r.field("m", *m).field("p", *p).field("entropy", binary_entropy(*p)?);
            r.field("lower_bound", classical_lower_bound(*m, *p)?);
            Ok((r, EXIT_OK))
        }
        CracCommand::TwoIntoOne => {
            let g = best_two_into_one();
            let mut r = Report::new("crac two-into-one");
            r.field("value", g.value.to_string()).field("value_decimal", ratio(g.value));
            r.field("best_deterministic", g.best_pure.to_string());
            r.field("grid_value", g.grid_value.to_string()).field("grid_levels", g.grid);
            let pts = g.witness.points();
            r.field("witness_points", json!([[pts.p0.0, pts.p0.1], [pts.p1.0, pts.p1.1]]));
            let missed = quarter_miss(&pts);
            r.field("missed_quadrants", missed.iter().map(|q| q.label()).collect::<Vec<_>>());
            let favored: Vec<String> = missed.iter().map(|q| favored_string(*q)).collect();
            r.field("favored_strings", favored);
            r.field("shared_randomness_value", g.shared_value.to_string());
            let mut t = Table::new("shared_mixture", &["encoder", "decoder_1", "decoder_2", "weight"]);
            for (enc, d1, d2, w) in &g.shared_mixture {
                let bits = |b: &[u8]| b.iter().map(|v| char::from(b'0' + v)).collect::<String>();
                t.push(vec![bits(enc).into(), bits(d1).into(), bits(d2).into(), w.to_string().into()]);
            }
            r.table(t);
            r.note("value: private randomness on each side; the mixture shows what shared randomness adds");
            Ok((r, EXIT_OK))
        }
    }
}

fn favored_string(q: Quadrant) -> String {
    (0..4usize).find(|&x| Quadrant::for_string(x) == q).map(|x| format_bits(x, 2)).unwrap_or_default()
}

fn parse_count(text: &str, spec: &str) -> Result<usize> {
    text.parse().map_err(|_| Error::Format(format!("bad automaton spec {spec:?}")))
}

/// `ln:n`, `rfa:n`, `noisy:n:theta`, or a QFA or DFA JSON file.
fn load_automaton(spec: &str) -> Result<Qfa> {
    if let Some(n) = spec.strip_prefix("ln:") {
        return dfa_as_qfa(&dfa_ln(parse_count(n, spec)?));
    }
    if let Some(n) = spec.strip_prefix("rfa:") {
        return rfa_ln(parse_count(n, spec)?);
    }
    if let Some(rest) = spec.strip_prefix("noisy:") {
        let (n, theta) = rest.split_once(':').ok_or_else(|| Error::Format(format!("expected noisy:n:theta, got {spec:?}")))?;
        let theta: f64 = theta.parse().map_err(|_| Error::Format(format!("bad angle in {spec:?}")))?;
        return noisy_rfa_ln(parse_count(n, spec)?, theta);
    }
    let text = read_file(spec)?;
    let doc: Value = serde_json::from_str(&text)?;
    if doc.get("transitions").is_some() {
        dfa_as_qfa(&Dfa::from_json(&text)?)
    } else {
        Qfa::from_json(&text)
    }
}

fn words(alphabet: &[char], max_len: usize) -> Vec<String> {
    let mut all = vec![String::new()];
    let mut level = vec![String::new()];
    for _ in 0..max_len {
        level = level.iter().flat_map(|w| alphabet.iter().map(move |c| format!("{w}{c}"))).collect();
        all.extend(level.iter().cloned());
    }
    all
}

fn qfa(c: &QfaCommand) -> Result<(Report, u8)> {
    match c {
        QfaCommand::Run { automaton, word } => {
            let a = load_automaton(automaton)?;
            let res = a.run(word)?;
            let mut r = Report::new(format!("qfa run {automaton} {word:?}"));
            r.field("states", a.size()).field("accept", res.accept).field("reject", res.reject);
            r.field("residual", res.residual);
            let mut t = Table::new("halting", &["step", "symbol", "halted"]);
            let symbols = std::iter::once('^').chain(word.chars()).chain(std::iter::once('$'));
            for (k, (sym, h)) in symbols.zip(&res.halting_profile).enumerate() {
                t.push(vec![k.into(), sym.to_string().into(), (*h).into()]);
            }
            r.table(t);
            Ok((r, EXIT_OK))
        }
        QfaCommand::Restrict { automaton, r: rr, save, max_len } => {
            let a = load_automaton(automaton)?;
            let b = restrict(&a, *rr)?;
            let expected = restricted_state_count(&a, *rr);
            let max_len = max_len.unwrap_or(rr + 3);
            let suite = words(a.alphabet(), max_len);
            if suite.len() > 1 << 16 {
                return Err(Error::TooLarge { what: format!("{} test words", suite.len()), limit: 1 << 16 });
            }
            let (mut gap, mut early) = (0.0f64, 0.0f64);
            for w in &suite {
                let (x, y) = (a.run(w)?, b.run(w)?);
                gap = gap.max((x.accept - y.accept).abs()).max((x.reject - y.reject).abs());
                let guarded = (rr + 1).min(w.chars().count() + 1);
                early = early.max(y.halting_profile[..guarded].iter().copied().fold(0.0, f64::max));
            }
            let mut r = Report::new(format!("qfa restrict {automaton} {rr}"));
            r.field("original_states", a.size()).field("restricted_states", b.size());
            r.field("formula", expected).field("formula_holds", b.size() == expected);
            r.field("words_checked", suite.len()).field("max_len", max_len);
            r.field("max_probability_gap", gap).field("max_early_halting", early);
            let mut code = EXIT_OK;
            if b.size() != expected || gap > 1e-9 || early > 1e-12 {
                r.note("restricted automaton disagrees with the original");
                code = EXIT_VERIFICATION;
            }
            if let Some(path) = save {
                write_file(path, &b.to_json()?)?;
            }
            Ok((r, code))
        }
        QfaCommand::Serial { automaton, n } => {
            if *n > SERIAL_CLI_LIMIT {
                return Err(Error::TooLarge { what: format!("serial table for n = {n}"), limit: SERIAL_CLI_LIMIT });
            }
            let a = load_automaton(automaton)?;
            let s = serial_from_qfa(&a, *n)?;
            let table = success_probability(&s)?;
            let mut r = Report::new(format!("qfa serial {automaton} {n}"));
            r.field("n", *n).field("states", a.size()).field("qubits", s.qubits());
            r.field("min_success", table.min());
            let mut t = Table::new("success", &["x", "i", "probability"]);
            for (x, i, p) in table.rows() {
                t.push(vec![bits_to_word(x, *n).into(), i.into(), p.into()]);
            }
            r.table(t);
            Ok((r, EXIT_OK))
        }
        QfaCommand::Sizes { n } => {
            if *n == 0 || *n > SIZES_LIMIT {
                return Err(Error::TooLarge { what: format!("size table up to n = {n}"), limit: SIZES_LIMIT });
            }
            let mut r = Report::new(format!("qfa sizes {n}"));
            let dfa = dfa_ln(*n).size();
            let rfa = rfa_ln_state_count(*n);
            r.field("dfa_states", dfa).field("dfa_qubits", ceil_log2(dfa));
            r.field("rfa_states", rfa).field("rfa_qubits", ceil_log2(rfa));
            let mut t = Table::new("sizes", &["n", "dfa_states", "dfa_qubits", "rfa_states", "rfa_qubits"]);
            for k in 1..=*n {
                let (d, f) = (dfa_ln(k).size(), rfa_ln_state_count(k));
                t.push(vec![k.into(), d.into(), ceil_log2(d).into(), f.into(), ceil_log2(f).into()]);
            }
            r.table(t);
            Ok((r, EXIT_OK))
        }
        QfaCommand::Export { automaton } => Ok((Report::raw(load_automaton(automaton)?.to_json()?), EXIT_OK)),
    }
}

fn parse_lengths(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| Error::Format(format!("bad length {s:?} in {text:?}"))))
        .collect()
}

fn bound_table(reports: &[BoundReport]) -> Table {
    let mut t = Table::new(
        "bounds",
        &["m", "n", "p", "epsilon", "copies", "chain_min_n", "implied_min_n", "verdict"],
    );
    for b in reports {
        let verdict = if b.infeasible { "INFEASIBLE" } else { "consistent" };
        t.push(vec![
            b.m.into(),
            b.n.into(),
            b.p.into(),
            b.epsilon.into(),
            b.copies.into(),
            b.chain_min_n.into(),
            b.implied_min_n.into(),
            verdict.into(),
        ]);
    }
    t
}

fn bounds(c: &BoundsCommand) -> Result<(Report, u8)> {
    match c {
        BoundsCommand::Holevo(args) => {
            let (s, label) = load_scheme(args)?;
            let chi = holevo_chi(&codeword_ensemble(&s)?);
            let mi = decoding_mutual_information(&s)?;
            let mut r = Report::new(format!("bounds holevo {label}"));
            r.field("m", s.m()).field("qubits", s.qubits()).field("holevo_chi", chi);
            r.field("information_total", mi.total);
            let mut t = Table::new("information", &["i", "information"]);
            for (i, v) in mi.per_bit.iter().enumerate() {
                t.push(vec![i.into(), (*v).into()]);
            }
            r.table(t);
            let mut code = EXIT_OK;
            if chi > s.qubits() as f64 + 1e-9 || mi.per_bit.iter().any(|v| *v > chi + 1e-9) {
                r.note("information exceeds the Holevo quantity or the qubit count");
                code = EXIT_VERIFICATION;
            }
            Ok((r, code))
        }
        BoundsCommand::Report { m, n, p } | BoundsCommand::SerialReport { m, n, p } => {
            let serial = matches!(c, BoundsCommand::SerialReport { .. });
            let reports = parse_lengths(m)?
                .into_iter()
                .map(|m| if serial { serial_bound_report(m, *n, *p) } else { quantum_bound_report(m, *n, *p) })
                .collect::<Result<Vec<_>>>()?;
            let name = if serial { "serial-report" } else { "report" };
            let mut r = Report::new(format!("bounds {name} {m} {n} {p}"));
            if let [b] = reports.as_slice() {
                r.field("kind", if serial { "serial" } else { "quantum" });
                r.field("m", b.m).field("n", b.n).field("p", b.p).field("epsilon", b.epsilon);
                r.field("copies", b.copies).field("extraction_success", b.extraction_success);
                r.field("information", b.information).field("chain_min_n", b.chain_min_n);
                r.field("implied_min_n", b.implied_min_n);
                r.field("verdict", if b.infeasible { "INFEASIBLE" } else { "consistent" });
                for note in &b.notes {
                    r.note(note.clone());
                }
            } else {
                r.table(bound_table(&reports));
            }
            let code = if reports.iter().any(|b| b.infeasible) { EXIT_INFEASIBLE } else { EXIT_OK };
            Ok((r, code))
        }
    }
}
