use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the arithmetic and geometry layers.
///
/// Variants split into domain errors (bad input) and invariant violations
/// (an identity that must hold exactly did not); see [`Error::is_invariant_violation`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("cyclotomic order must be positive")]
    ZeroOrder,

    #[error("division by zero in Q(xi_{0})")]
    DivisionByZero(u64),

    #[error("{value} is not coprime to {modulus}")]
    NotCoprime { value: i64, modulus: i64 },

    #[error("element of Q(xi_{0}) is not rational")]
    NotRational(u64),

    #[error("element is not integral: {0}")]
    NonIntegral(String),

    #[error("{func}({a}*pi/{q}) has a pole")]
    Pole { func: &'static str, a: i64, q: i64 },

    #[error("L({q}; {ps:?}) admits no spin structure")]
    NoSpinStructure { q: i64, ps: Vec<i64> },

    #[error("spin label {0} is invalid (expected 0 or 1, required exactly when q is even)")]
    InvalidSpinLabel(String),

    #[error("invalid lens space parameters: {0}")]
    InvalidLensSpace(String),

    #[error("index k={k} violates k(p+-1) != 0 mod {q} for p={p}")]
    InvalidResidueIndex { q: i64, p: i64, k: i64 },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    /// True for failures that signal an arithmetic bug rather than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub(crate) fn invariant(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
