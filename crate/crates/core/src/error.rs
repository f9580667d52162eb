use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("half-shuffle or bracket applied to a term containing the empty word")]
    UnitOperand,
    #[error("paths live on different time grids")]
    GridMismatch,
    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("sequence shape mismatch: ({0}, {1}) vs ({2}, {3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("path must start at zero")]
    NonZeroStart,
    #[error("Rota-Baxter operator has weight {0}, expected 1")]
    WrongWeight(String),
    #[error("shuffle residual requires a jump-free backend")]
    JumpsPresent,
    #[error("backend is not regular: triple bracket {0:e} exceeds tolerance {1:e}")]
    NotRegular(f64, f64),
    #[error("log of the exponential has components of polynomial degree {0} at order {1}")]
    NotPrimitive(usize, usize),
    #[error("permutation sum over {0} factors exceeds the cap of {1}")]
    TooManyFactors(usize, usize),
    #[error("unknown axiom check id `{0}`")]
    UnknownCheckId(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Config(String),
    #[error("matrix logarithm undefined: {0}")]
    LogUndefined(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
