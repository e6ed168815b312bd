use alloc::vec::Vec;

use crate::model::PovmViolation;

/// Errors produced by the numerical kernel and the interferometer model.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix must have positive dimension")]
    EmptyMatrix,

    #[error("matrix has {entries} entries, expected {dim}x{dim}")]
    BadShape { dim: usize, entries: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("matrix is not Hermitian (max |H - H†| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("density matrix trace is {trace}, expected 1")]
    InvalidTrace { trace: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{probs} probabilities but {states} detector states")]
    LengthMismatch { probs: usize, states: usize },

    #[error("at least two paths are required, got {0}")]
    TooFewPaths(usize),

    #[error("probability p[{index}] = {value} is negative")]
    NegativeProbability { index: usize, value: f64 },

    #[error("{what} has norm {value}, outside the repair tolerance around 1")]
    NotNormalized { what: &'static str, value: f64 },

    #[error("index {index} out of range for {len} states")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("two-state routine called with {0} states")]
    WrongArity(usize),

    #[error("negative radicand {0:e} in pure-state trace norm")]
    Domain(f64),

    #[error("joint probability {0:e} is negative beyond rounding")]
    NegativeJointProbability(f64),

    #[error("invalid POVM: {} violation(s)", .0.len())]
    InvalidPovm(Vec<PovmViolation>),

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
