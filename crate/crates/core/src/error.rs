use thiserror::Error;

/// Errors raised by the exact and numeric layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid dimensions: {0}")]
    Dimension(String),

    #[error("sign vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("matrix has rank {rank}, expected full row rank {rows}")]
    RankDeficient { rank: usize, rows: usize },

    #[error("vectors are linearly dependent")]
    DependentBasis,

    #[error(
        "bijectivity requires equally many coefficient and exponent rows (got {coeff} and {exponent})"
    )]
    UnequalRowCounts { coeff: usize, exponent: usize },

    #[error("enumeration over {n} coordinates exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("sign vector {0} is not a vector of the subspace")]
    NotAVector(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Io(String),

    #[error("invalid network: {0}")]
    Network(String),

    #[error("numeric overflow: exponent {0} exceeds the clamp")]
    Overflow(String),

    #[error("internal consistency violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
