//! Command-line front end. Every command builds a report that renders as
//! an aligned table, CSV or JSON; all sampling is driven by `--seed`
//! through ChaCha8.
//!
//! Exit codes: 0 success, 2 infeasible parameters, 3 verification
//! failed, 4 input format error.

mod commands;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
pub use output::Format;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INFEASIBLE: u8 = 2;
pub const EXIT_VERIFICATION: u8 = 3;
pub const EXIT_INPUT: u8 = 4;

/// Environment variable capping the worker threads used by sweeps.
pub const THREADS_ENV: &str = "QRAC_LAB_THREADS";

#[derive(Parser, Debug)]
#[command(name = "qrac-lab", version, about = "Random access codes, quantum finite automata and their information bounds")]
pub struct Cli {
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quantum random access codes.
    Qrac(QracArgs),
    /// Classical random access codes.
    #[command(subcommand)]
    Crac(CracCommand),
    /// Quantum finite automata.
    #[command(subcommand)]
    Qfa(QfaCommand),
    /// Information bounds.
    #[command(subcommand)]
    Bounds(BoundsCommand),
}

#[derive(Args, Debug, Clone)]
pub struct SchemeArgs {
    /// `2to1`, `3to1`, or a scheme JSON file.
    pub kind: String,
    /// Tensor power applied first.
    #[arg(long)]
    pub tensor: Option<usize>,
    /// Odd number of copies decoded by majority, applied after --tensor.
    #[arg(long)]
    pub amplify: Option<usize>,
}

#[derive(Args, Debug)]
pub struct QracArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    /// Print every (x, i) success probability.
    #[arg(long)]
    pub table: bool,
    /// Run sequential extraction on this bit string.
    #[arg(long)]
    pub extract: Option<String>,
    /// Evaluate on this many sampled strings instead of all of them.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Write the scheme as JSON.
    #[arg(long)]
    pub export: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum CracCommand {
    /// Build and verify a pad-family code.
    Build {
        m: usize,
        p: f64,
        /// Pads per family; defaults to 36m.
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long, default_value_t = 64)]
        max_attempts: usize,
        /// Write the pad family as JSON.
        #[arg(long)]
        family: Option<PathBuf>,
        /// Write the covering code as JSON.
        #[arg(long)]
        code: Option<PathBuf>,
        /// Print every (x, i) success probability.
        #[arg(long)]
        table: bool,
    },
    /// The entropy lower bound (1 - H(p)) m.
    LowerBound { m: usize, p: f64 },
    /// Exact value of the classical 2-into-1 game.
    TwoIntoOne,
}

#[derive(Subcommand, Debug)]
pub enum QfaCommand {
    /// Acceptance probabilities and halting profile of one word.
    Run { automaton: String, word: String },
    /// Delay all halting by r letters.
    Restrict {
        automaton: String,
        r: usize,
        /// Write the restricted automaton as JSON.
        #[arg(long)]
        save: Option<PathBuf>,
        /// Longest word compared against the original; defaults to r + 3.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Success table of the serial code read off an n-restricted automaton.
    Serial { automaton: String, n: usize },
    /// State and qubit counts of the recognizers of L_n.
    Sizes { n: usize },
    /// Print an automaton as JSON.
    Export { automaton: String },
}

#[derive(Subcommand, Debug)]
pub enum BoundsCommand {
    /// Holevo quantity and decoding information of a quantum code.
    Holevo(SchemeArgs),
    /// Lower bound chain for quantum codes; m may be a comma-separated list.
    Report { m: String, n: usize, p: f64 },
    /// The same chain for serial codes.
    SerialReport { m: String, n: usize, p: f64 },
}

pub(crate) struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidParameter(_) | Error::TooLarge { .. } | Error::DimensionMismatch { .. } => EXIT_INFEASIBLE,
            Error::VerificationFailed(_)
            | Error::RetryCapExhausted { .. }
            | Error::NotRestricted { .. }
            | Error::NotEmbeddable(_) => EXIT_VERIFICATION,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Caps the global thread pool from `QRAC_LAB_THREADS` when it is set.
pub fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        // fails only if the pool already exists, which leaves it as it is
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses `args`, runs the command and writes the report, returning the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let (report, code) = match commands::execute(&cli) {
        Ok(done) => done,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    let text = match report.render(cli.format) {
        Ok(t) => t,
        Err(e) => {
            let f = Failure::from(e);
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_INPUT;
    }
    code
}
