use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cos-power exponent {exponent} outside supported range 1..={limit}")]
    ExponentOutOfRange { exponent: u64, limit: u64 },

    #[error("momentum sector mismatch: p = {0} vs p = {1}")]
    SectorMismatch(i32, i32),

    #[error("eigensolver did not converge: {0}")]
    EigenFailure(String),

    #[error("state norm collapsed to {norm:.3e}; refusing to renormalize")]
    NormCollapse { norm: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
