//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by the expansion, oracle and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An index or argument pair lies outside the supported range.
    #[error("out of range: {0}")]
    Range(String),

    /// The requested `n` does not satisfy the cutoff condition of the bound.
    #[error("n = {n} does not satisfy the cutoff condition (n {relation} {cutoff})")]
    BelowCutoff {
        n: u64,
        cutoff: u64,
        relation: &'static str,
    },

    /// The pair `(n, m)` is explicitly excluded from the Lehmer-style band.
    #[error("(n, m) = ({n}, {m}) is excluded from the Lehmer-style band")]
    Excluded { n: u64, m: u64 },

    /// Two truncated series of different orders were combined.
    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    /// A series operation requires a specific constant term.
    #[error("series constant term must be {0}")]
    ConstantTerm(&'static str),

    /// The exact partition table does not reach far enough.
    #[error("partition table too small: need n_max >= {required}, have {available}")]
    OracleTooSmall { required: u64, available: u64 },

    /// A certified comparison stayed inside the precision margin up to the cap.
    #[error("comparison remained inside the precision margin up to {max_bits} bits")]
    Ambiguous { max_bits: u32 },

    /// Invalid precision settings.
    #[error("invalid precision: {0}")]
    Precision(String),

    /// Unknown verification suite name.
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    /// Malformed partition cache file.
    #[error("malformed partition cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
