use thiserror::Error;

/// Errors produced by the code-construction and analysis library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("symbol {symbol} out of range for Z{modulus}")]
    SymbolOutOfRange { symbol: u8, modulus: u8 },

    #[error("info word shape mismatch: matrix expects (k1={expected_k1}, k2={expected_k2}), got (k1={got_k1}, k2={got_k2})")]
    DimensionMismatch {
        expected_k1: usize,
        expected_k2: usize,
        got_k1: usize,
        got_k2: usize,
    },

    #[error("column has {got} entries, matrix has {expected} rows")]
    ColumnLength { expected: usize, got: usize },

    #[error("prefix length {requested} exceeds matrix length {available} symbols")]
    PrefixOutOfRange { requested: usize, available: usize },

    #[error("exhaustive enumeration over 2^{dimension_bits} info words exceeds the 2^{cap_log2} cap")]
    EnumerationCapExceeded { dimension_bits: usize, cap_log2: u32 },

    #[error("generator matrix is not rotationally invariant (all-one codeword not in the row span)")]
    NotRotationallyInvariant,

    #[error("spectrum was not built with the rotation words excluded")]
    MissingRotationExclusions,

    #[error("codebook is not non-coherent detectable (d_eq_min = 0); pass the ambiguity override to simulate anyway")]
    NotNcDetectable,

    #[error("bit length {n_bits} is odd; Z4/QPSK symbols need bit pairs")]
    OddBitLength { n_bits: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("hex matrix parse error at line {line}: {message}")]
    HexParse { line: usize, message: String },

    #[error("code family document error: {0}")]
    FamilyDocument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable tag for this error, used by the CLI's JSON
    /// error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SymbolOutOfRange { .. } => "symbol_out_of_range",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::ColumnLength { .. } => "column_length",
            Error::PrefixOutOfRange { .. } => "prefix_out_of_range",
            Error::EnumerationCapExceeded { .. } => "enumeration_cap_exceeded",
            Error::NotRotationallyInvariant => "not_rotationally_invariant",
            Error::MissingRotationExclusions => "missing_rotation_exclusions",
            Error::NotNcDetectable => "not_nc_detectable",
            Error::OddBitLength { .. } => "odd_bit_length",
            Error::InvalidConfig(_) => "invalid_config",
            Error::HexParse { .. } => "hex_parse",
            Error::FamilyDocument(_) => "family_document",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
