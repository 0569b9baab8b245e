use thiserror::Error;

/// Errors raised while constructing or combining distributions, codes and measures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("length mismatch: {labels} labels but {values} values")]
    LengthMismatch { labels: usize, values: usize },

    #[error("empty alphabet")]
    EmptyAlphabet,

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("label {0:?} contains a tab or newline")]
    InvalidLabel(String),

    #[error("probability {value} for symbol {label:?} is negative or not finite")]
    InvalidProbability { label: String, value: f64 },

    #[error("total mass {0} is not within 1e-9 of 1")]
    MassNotNormalized(f64),

    #[error("total mass is zero")]
    ZeroMass,

    #[error("order {0} is not a finite nonnegative real")]
    InvalidOrder(f64),

    #[error("order {0} is outside the allowed range {1}")]
    OrderOutOfRange(f64, &'static str),

    #[error("alphabets differ")]
    AlphabetMismatch,

    #[error("symbol {0:?} has zero probability")]
    ZeroProbability(String),

    #[error("length {value} for symbol {label:?} must be finite and nonnegative")]
    InvalidLength { label: String, value: f64 },

    #[error("Kraft sum {0} exceeds 1")]
    KraftViolated(f64),

    #[error("code is not compact: Kraft sum {0}")]
    NotCompact(f64),

    #[error("distributions are mutually singular")]
    MutuallySingular,

    #[error("invalid codeword {0:?}")]
    InvalidCodeword(String),

    #[error("codeword {0:?} is a prefix of {1:?}")]
    NotPrefixFree(String, String),

    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),

    #[error("bits at offset {0} match no codeword")]
    Unparseable(usize),

    #[error("dangling prefix {0:?} at end of input")]
    DanglingPrefix(String),

    #[error("block alphabet of {size} outcomes exceeds cap {cap}")]
    BlockCapExceeded { size: u128, cap: u64 },

    #[error("matrix is not rectangular: row {row} has {len} entries, expected {expected}")]
    Ragged {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
