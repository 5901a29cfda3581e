use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("the zero polynomial has no codegree")]
    ZeroPolynomial,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid module presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid chain map: {0}")]
    InvalidChainMap(String),
    #[error("invalid dg algebra: {0}")]
    InvalidDgAlgebra(String),
    #[error("invalid simplicial complex: {0}")]
    InvalidSimplicialComplex(String),
    #[error("set of primes is not specialization closed")]
    NotSpecializationClosed,
    #[error("precondition violated: {0}")]
    Precondition(String),
}
