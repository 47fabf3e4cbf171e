//! Error type shared by every module in the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {0} outside the supported range")]
    QubitCountOutOfRange(usize),

    #[error("state dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("target qubit {target} outside 1..={n_qubits}")]
    TargetOutOfRange { target: usize, n_qubits: usize },

    #[error("qubit {0} listed more than once in a gate")]
    DuplicateTarget(usize),

    #[error("matrix has {len} entries, expected {expected} for arity {arity}")]
    MatrixShape {
        len: usize,
        expected: usize,
        arity: usize,
    },

    #[error("matrix is not unitary: max deviation {deviation:.3e}")]
    NotUnitary { deviation: f64 },

    #[error("state norm deviates from 1 by {0:.3e}")]
    NotNormalized(f64),

    #[error("basis index {index} outside 0..{dim}")]
    BasisIndexOutOfRange { index: usize, dim: usize },

    #[error("excitation count {k} outside 0..={n}")]
    ExcitationOutOfRange { k: usize, n: usize },

    #[error("no amplitude remains on the kept register (leak = {leak})")]
    DegenerateExtraction { leak: f64 },

    #[error("compressed register leaked probability {leak:.3e}, above {tolerance:.0e}")]
    LeakAboveTolerance { leak: f64, tolerance: f64 },

    #[error("density matrix invalid: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("circuit cannot be serialized: {0}")]
    NotSerializable(String),

    #[error("circuit parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
