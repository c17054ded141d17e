use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("subsystem index {index} out of range for {count} subsystems")]
    BadSubsystemIndex { index: usize, count: usize },
    #[error("bad bipartition: {0}")]
    BadPartition(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not an orthogonal projector: {0}")]
    NotAProjector(String),
    #[error("channel is not CPTP (max deviation {deviation:e})")]
    InvalidChannel { deviation: f64 },
    #[error("value {0} outside the domain [0, 1]")]
    DomainError(f64),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
