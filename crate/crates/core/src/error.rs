use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid pencil: {0}")]
    InvalidPencil(String),

    #[error("index {index} out of range 1..={size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("F_{m} is undefined at z = {z}: z^(2m) = 1")]
    RatioUndefined { m: usize, z: Complex64 },

    #[error("m = {0} is even: there is no purely imaginary root")]
    NoImaginaryRoot(usize),

    #[error("kappa = 1: the locus is a line, not a circle")]
    DegenerateCircle,

    #[error("clusters hold {got} roots, expected {expected}")]
    ClusterCount { got: usize, expected: usize },

    #[error("the root finder requires the default diagonal (sigma, tau) = (1, -1)")]
    NonDefaultDiagonal,
}

pub type Result<T> = std::result::Result<T, Error>;
