//! CLI invocations with checked-in expected output under `tests/golden`.

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: u8,
}

const fn case(name: &'static str, args: &'static [&'static str], exit: u8) -> Case {
    Case { name, args, exit }
}

pub const CASES: &[Case] = &[
    case("qrac_2to1_table", &["qrac", "2to1", "--table"], 0),
    case("qrac_2to1_amplify1", &["qrac", "2to1", "--amplify", "1", "--table"], 0),
    case("qrac_2to1_amplify5_csv", &["qrac", "2to1", "--amplify", "5", "--table", "--format", "csv"], 0),
    case("qrac_3to1_json", &["qrac", "3to1", "--format", "json"], 0),
    case("qrac_extract", &["qrac", "2to1", "--tensor", "2", "--amplify", "3", "--extract", "1011"], 0),
    case("qrac_sampled", &["qrac", "3to1", "--tensor", "2", "--samples", "16", "--seed", "9"], 0),
    case("qrac_even_copies", &["qrac", "2to1", "--amplify", "4"], 2),
    case("qrac_missing_file", &["qrac", "tests/golden/inputs/absent.json"], 4),
    case("crac_build", &["crac", "build", "6", "0.6", "--seed", "7"], 0),
    case("crac_build_json", &["crac", "build", "5", "0.7", "--seed", "3", "--format", "json"], 0),
    case("crac_build_identity", &["crac", "build", "4", "0.9", "--table", "--format", "csv"], 0),
    case("crac_lower_bound", &["crac", "lower-bound", "100", "0.85"], 0),
    case("crac_lower_bound_vacuous", &["crac", "lower-bound", "10", "0.4"], 2),
    case("crac_two_into_one", &["crac", "two-into-one"], 0),
    case("qfa_run_ln", &["qfa", "run", "ln:2", "ba"], 0),
    case("qfa_run_noisy_json", &["qfa", "run", "noisy:2:0.3", "abba", "--format", "json"], 0),
    case("qfa_run_file", &["qfa", "run", "tests/golden/inputs/flip.json", "aab"], 0),
    case("qfa_run_dfa_file", &["qfa", "run", "tests/golden/inputs/l1_dfa.json", "ba"], 0),
    case("qfa_run_bad_json", &["qfa", "run", "tests/golden/inputs/broken.json", "a"], 4),
    case("qfa_run_bad_letter", &["qfa", "run", "rfa:2", "abc"], 4),
    case("qfa_restrict", &["qfa", "restrict", "noisy:1:0.4", "2"], 0),
    case("qfa_restrict_file", &["qfa", "restrict", "tests/golden/inputs/flip.json", "0", "--format", "csv"], 0),
    case("qfa_serial_rfa", &["qfa", "serial", "rfa:3", "3", "--format", "csv"], 0),
    case("qfa_serial_noisy", &["qfa", "serial", "noisy:2:0.25", "2"], 0),
    case("qfa_serial_not_restricted", &["qfa", "serial", "ln:1", "2"], 3),
    case("qfa_sizes", &["qfa", "sizes", "5"], 0),
    case("qfa_export", &["qfa", "export", "tests/golden/inputs/flip.json"], 0),
    case("bounds_holevo_3to1", &["bounds", "holevo", "3to1"], 0),
    case("bounds_holevo_tensor_csv", &["bounds", "holevo", "2to1", "--tensor", "2", "--format", "csv"], 0),
    case("bounds_report", &["bounds", "report", "100", "1", "0.85"], 0),
    case("bounds_report_perfect", &["bounds", "report", "40", "5", "1.0"], 2),
    case("bounds_serial_report", &["bounds", "serial-report", "65536", "400", "0.85", "--format", "json"], 0),
    case("bounds_sweep_csv", &["bounds", "report", "100,1000,65536", "20", "0.85", "--format", "csv"], 2),
    case("usage_error", &["qrac"], 4),
];

/// Runs one case in process; stdout, then stderr under a marker line.
pub fn run_case(c: &Case) -> (u8, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = std::iter::once("qrac-lab").chain(c.args.iter().copied());
    let code = qrac_lab::cli::run(args, &mut out, &mut err);
    let mut text = String::from_utf8(out).expect("utf-8 stdout");
    if !err.is_empty() {
        text.push_str("--- stderr ---\n");
        text.push_str(&String::from_utf8(err).expect("utf-8 stderr"));
    }
    (code, text)
}

pub fn golden_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"))
}
