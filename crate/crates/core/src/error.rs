use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("length {0} is not a perfect square")]
    NotPerfectSquare(usize),
    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("state trace is {trace}, expected 1")]
    InvalidTrace { trace: f64 },
    #[error("state has negative eigenvalue {eigenvalue:e}")]
    NotPositive { eigenvalue: f64 },
    #[error("channel is not completely positive (Choi eigenvalue {eigenvalue:e})")]
    NotCompletelyPositive { eigenvalue: f64 },
    #[error("{name} = {value} is outside the allowed range {allowed}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        allowed: &'static str,
    },
    #[error("non-finite value for {0}")]
    NonFinite(&'static str),
    #[error("probabilities sum to {sum}, expected 1")]
    ProbabilitySum { sum: f64 },
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("could not diagonalize unitary: {0}")]
    Diagonalization(&'static str),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
