use thiserror::Error;

use crate::qmat::ComplexMatrix;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("invalid density matrix: {reason}")]
    InvalidDensityMatrix { reason: String },

    #[error("invalid Hilbert dimension {0}; phase space needs N >= 2")]
    InvalidDimension(usize),

    #[error("Wigner trace at ({q}, {p}) has imaginary residue {residue:e}")]
    NonNegligibleImaginaryPart { q: usize, p: usize, residue: f64 },

    #[error("reconstructed operator is not positive (min eigenvalue {min_eigenvalue:e})")]
    ReconstructionNotPositive {
        min_eigenvalue: f64,
        matrix: Box<ComplexMatrix>,
    },

    #[error("reconstructed operator has trace {trace}, not 1")]
    ReconstructionNotNormalized {
        trace: f64,
        matrix: Box<ComplexMatrix>,
    },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("purity factor {0} outside [0, 1]")]
    InvalidEpsilon(f64),

    #[error("randomization strength {0} outside [0, 1]")]
    InvalidEta(f64),

    #[error("threshold {0} outside [0, 1]")]
    InvalidThreshold(f64),

    #[error("state vector has zero norm")]
    ZeroNorm,

    #[error("cell ({q}, {p}) duplicates an earlier cell after folding into the first quadrant")]
    DuplicateCell { q: usize, p: usize },

    #[error("scaled point operator at ({q}, {p}) is not unitary (deviation {deviation:e})")]
    NonUnitaryPointOperator { q: usize, p: usize, deviation: f64 },

    #[error("eigendecomposition failed")]
    EigenFailure,
}
