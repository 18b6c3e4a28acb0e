//! Error type shared by the matrix routines, state constructors, and sweeps.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A routine that requires a Hermitian input saw too large a deviation
    /// between the matrix and its conjugate transpose.
    #[error("matrix is not Hermitian: max |A - A^dagger| entry = {0:.3e}")]
    NotHermitian(f64),

    /// A Jacobi iteration failed to reach its off-diagonal threshold.
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    /// Matrix or subsystem dimensions do not fit the requested operation.
    #[error("dimension mismatch: {context} (expected {expected}, got {got})")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    /// The Horodecki family parameter lies outside `[2, 5]`.
    #[error("alpha = {0} is outside the admissible range [2, 5]")]
    AlphaOutOfRange(f64),

    /// A candidate density matrix does not have unit trace.
    #[error("trace = {0} differs from 1")]
    TraceNotOne(f64),

    /// A candidate density matrix has a significantly negative eigenvalue.
    #[error("matrix is not positive semidefinite: min eigenvalue = {0:.3e}")]
    NotPositiveSemidefinite(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
