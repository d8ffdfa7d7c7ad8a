use thiserror::Error;

/// Errors for state validation, channel application, and the scalar solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("not Hermitian (max |m - m\u{2020}| entry = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("not positive semidefinite (most negative eigenvalue = {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("trace is not 1 (|tr - 1| = {deviation:e})")]
    TraceNotOne { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("eigensolver did not converge")]
    EigenFailure,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("domain error: {what} = {value} outside {range}")]
    DomainError {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("target entropy {h0} is infeasible for dimension {dim} (must lie in [0, log d])")]
    InfeasibleEntropy { h0: f64, dim: usize },

    #[error("functional {label} is outside its certified concavity range for d = {dim}")]
    OutOfCertifiedRange { label: String, dim: usize },

    #[error("parse error: {0}")]
    ParseError(String),

    #[error("bad sigma spec: {0}")]
    BadSigmaSpec(String),

    #[error("unknown figure: {0}")]
    UnknownFigure(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
