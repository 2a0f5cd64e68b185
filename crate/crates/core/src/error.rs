use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("subsystem index {index} out of range for {count} subsystems")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("rapidity must be non-negative, got {0}")]
    NegativeRapidity(f64),

    #[error("invalid spin: {0}")]
    InvalidSpin(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("unknown parametrization {0}; expected 1, 2 or 3")]
    UnknownParametrization(u8),

    #[error("invalid state literal: {0}")]
    InvalidState(String),

    #[error("invalid sweep spec: {0}")]
    InvalidSweep(String),

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
