use thiserror::Error;

#[derive(Debug, Error)]
pub enum EmbedError {
    #[error("lattice error: {0}")]
    Lattice(#[from] lattice_core::LatticeError),
    #[error("enumeration error: {0}")]
    Enumeration(#[from] shortvec::ShortvecError),
    #[error("certificate JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("vector pairs non-integrally with a root: {0}")]
    NonIntegralPairing(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, EmbedError>;
