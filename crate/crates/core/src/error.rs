//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not symmetric (max asymmetry {max_asym:.3e} exceeds tolerance {tol:.3e})")]
    NonSymmetric { max_asym: f64, tol: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e} below -{tol:.3e})")]
    NotPsd { eigenvalue: f64, tol: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("rank-one downdate would lose positive semidefiniteness (alpha * |a|_A^2 = {norm_sq})")]
    NotDowndatable { norm_sq: f64 },

    #[error("laplace scale must be positive, got {0}")]
    BadScale(f64),

    #[error("block size {b} invalid for n = {n}")]
    BadBlockSize { n: usize, b: usize },

    #[error("sample size {0} must be even")]
    OddSampleSize(usize),

    #[error("noise vector has length {got}, expected {expected}")]
    NoiseLenMismatch { expected: usize, got: usize },

    #[error("index {index} out of range ({len} entries)")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("insufficient sample: {0}")]
    InsufficientSample(String),

    #[error("invalid privacy budget: eps = {eps}, delta = {delta}")]
    BadBudget { eps: f64, delta: f64 },

    #[error("invalid distribution spec: {0}")]
    BadSpec(String),

    #[error("c1 = {0} must be at least 64e")]
    BadC1(f64),

    #[error("audit requires dimension 1, got {0}")]
    DimNotOne(usize),

    #[error("precondition unsatisfied: {0}")]
    PreconditionUnsatisfied(String),

    #[error("invalid partition: {0}")]
    BadPartition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
