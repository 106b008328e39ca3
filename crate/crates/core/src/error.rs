use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("body has affine dimension {affine_dim} < {dim}")]
    DegenerateBody { affine_dim: usize, dim: usize },
    #[error("halfspace system does not describe a bounded set")]
    Unbounded,
    #[error("invalid slab: lo {lo} > hi {hi}")]
    InvalidSlab { lo: f64, hi: f64 },
    #[error("polytope certification failed: {0}")]
    CertificationFailed(String),
    #[error("area measure is not centered (|sum| = {residual:e})")]
    NotCentered { residual: f64 },
    #[error("area measure directions do not span: {0}")]
    NotSpanning(String),
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("divisor is not pseudo-effective (t = {t} > sigma_1 = {sigma1})")]
    NotEffective { t: f64, sigma1: f64 },
    #[error("divisor is not nef (t = {t} > sigma_r = {sigma_r})")]
    NotNef { t: f64, sigma_r: f64 },
    #[error("divisor is not big")]
    NotBig,
    #[error("curve class is not movable")]
    NotMovable,
    #[error("curve class has M = 0")]
    MNotPositive,
    #[error("rank {0} is too small (need r >= 2)")]
    RankTooSmall(usize),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("unknown verification suite '{0}'")]
    UnknownSuite(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::EmptyInput => "EmptyInput",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::DegenerateBody { .. } => "DegenerateBody",
            Error::Unbounded => "Unbounded",
            Error::InvalidSlab { .. } => "InvalidSlab",
            Error::CertificationFailed(_) => "CertificationFailed",
            Error::NotCentered { .. } => "NotCentered",
            Error::NotSpanning(_) => "NotSpanning",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::NotEffective { .. } => "NotEffective",
            Error::NotNef { .. } => "NotNef",
            Error::NotBig => "NotBig",
            Error::NotMovable => "NotMovable",
            Error::MNotPositive => "MNotPositive",
            Error::RankTooSmall(_) => "RankTooSmall",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::UnknownSuite(_) => "UnknownSuite",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Parse(_) => "ParseError",
            Error::Io(_) => "IoError",
        }
    }

    /// Errors raised by the mathematics rather than by malformed input or I/O.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Parse(_) | Error::Io(_) | Error::UnknownSuite(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
