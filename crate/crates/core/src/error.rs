use thiserror::Error;

/// Errors raised by constructors, simulators and file-format readers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator is not unitary (max deviation of U^dagger U from identity: {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} exceeds the supported size (limit {limit})")]
    TooLarge { what: String, limit: usize },

    #[error("automaton halts with probability {mass:.3e} after prefix {prefix:?}, so it is not {r}-restricted")]
    NotRestricted { prefix: String, mass: f64, r: usize },

    #[error("automaton cannot be embedded: {0}")]
    NotEmbeddable(String),

    #[error("symbol {0:?} is not in the input alphabet")]
    UnknownSymbol(char),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("no verified pad family after {attempts} attempts (best min success {best_min:.6})")]
    RetryCapExhausted { attempts: usize, best_min: f64 },

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
