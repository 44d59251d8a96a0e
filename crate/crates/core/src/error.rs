use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arccos is undefined at x = {0}: |x| must not exceed 1")]
    Domain(f64),

    #[error("degree {0} is not a power of two; the doubling algorithm needs N = 2^p")]
    NotPowerOfTwo(u32),

    #[error("cannot represent non-finite value {0} exactly")]
    NonFinite(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
