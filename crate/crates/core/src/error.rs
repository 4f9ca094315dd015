use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (residual {residual:.3e} exceeds {tol:.1e})")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("Jacobi eigensolver failed to converge within {0} sweeps")]
    NoConvergence(usize),

    #[error("invalid arguments: {0}")]
    InvalidArguments(String),

    #[error("rank {k} or component {q} out of range for 2j = {two_j}")]
    OutOfRange { k: u32, q: i32, two_j: u32 },

    #[error("trace is {trace:.12} instead of one")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:.3e})")]
    NotPositive { min_eig: f64 },

    #[error("symmetrized moment has imaginary residual {imag:.3e}")]
    NonRealMoment { imag: f64 },

    #[error("moment inversion residual {residual:.3e} exceeds {tol:.1e}")]
    IllConditioned { residual: f64, tol: f64 },

    #[error("operation requires spin 1, got 2j = {two_j}")]
    WrongSpin { two_j: u32 },

    #[error("polarization magnitude {magnitude:.3e} below {min:.1e}; mean spin direction undefined")]
    UndefinedMeanSpinDirection { magnitude: f64, min: f64 },

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
