use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state or operator has zero dimension")]
    EmptyDimension,

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("operator is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not a projector (max deviation {deviation:e})")]
    NotProjector { deviation: f64 },

    #[error("projector must have rank one, found rank {rank}")]
    NotRankOne { rank: usize },

    #[error("post-selected state is orthogonal to the initial state (|overlap| = {overlap:e})")]
    OrthogonalPostSelection { overlap: f64 },

    #[error("basis is not complete and orthonormal (residual {residual:e})")]
    IncompleteBasis { residual: f64 },

    #[error("projectors do not form a partition of the identity (residual {residual:e})")]
    InvalidPartition { residual: f64 },

    #[error("commutation precondition violated for basis member {index} (residual {residual:e})")]
    CommutationViolated { index: usize, residual: f64 },

    #[error("invalid pointer: {0}")]
    InvalidPointer(String),

    #[error("coupling must be positive for a back-action ratio")]
    ZeroCoupling,

    #[error("invalid bin edges: {0}")]
    InvalidBinEdges(String),

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("post-selection outcome {outcome} is never observed")]
    NeverPostSelected { outcome: usize },

    #[error("wavefunction node at xi = {xi} (|psi| = {magnitude:e})")]
    NodePoint { xi: f64, magnitude: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("need at least {needed} coupling values, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
