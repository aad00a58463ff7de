use thiserror::Error;

use crate::exactla::Field;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },
    #[error("matrix of {rows}x{cols} entries exceeds the size guard of {limit} entries")]
    SizeGuard {
        rows: usize,
        cols: usize,
        limit: usize,
    },
    #[error("subspace is not contained in the ambient space")]
    SubspaceNotContained,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("algebra is not commutative: e{0} e{1} != e{1} e{0}")]
    NotCommutative(usize, usize),
    #[error("element is not central")]
    NotCentral,
    #[error("cochain degree {0} is out of range")]
    DegreeOutOfRange(usize),
    #[error("not a cocycle: the cocycle identity fails at basis triple {0:?}")]
    NotCocycle((usize, usize, usize)),
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("invalid derivation: {0}")]
    InvalidDerivation(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
}
