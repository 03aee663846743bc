use thiserror::Error;

/// Broad classes of failure, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The input itself is malformed (bad shape, non-finite numbers, bad breakpoints).
    Malformed,
    /// The input is well formed but lies outside the domain of the operation.
    Domain,
    /// The operation is refused because it cannot be carried out as requested.
    Capability,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vectors must have at least one entry")]
    EmptyVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cannot mix real and complex operands")]
    FieldMismatch,
    #[error("real vector has a nonzero imaginary part at index {index}")]
    ImaginaryInReal { index: usize },
    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },
    #[error("matrix of shape {rows}x{cols} cannot hold {len} entries")]
    BadShape {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("tightness constant undefined for zero vector")]
    ZeroVector,
    #[error("sparsity level s = {s} must satisfy 0 < s <= n = {n}")]
    SparsityOutOfRange { s: f64, n: usize },
    #[error("phase at index {index} has modulus {modulus}, expected 1")]
    NotUnimodular { index: usize, modulus: f64 },
    #[error("spanning set spans only the zero subspace")]
    EmptySubspace,
    #[error("vector is orthogonal to the subspace; nearest unit vector is not unique")]
    OrthogonalToSubspace,
    #[error("exact search supports ambient dimension up to {cutoff}, got {n}; use the heuristic")]
    ExactSearchTooLarge { n: usize, cutoff: usize },
    #[error(
        "exact search needs a real subspace; complex phases are not enumerable, use the heuristic"
    )]
    ExactSearchComplex,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("step function value {value} at cell {index} is negative")]
    NegativeValue { index: usize, value: f64 },
    #[error("invalid breakpoints: {0}")]
    InvalidBreakpoints(String),
    #[error("function has L2 norm {norm}, expected 1 (normalize first)")]
    NotUnitNorm { norm: f64 },
    #[error("the zero function cannot be normalized")]
    ZeroFunction,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::EmptyVector
            | Error::DimensionMismatch { .. }
            | Error::FieldMismatch
            | Error::ImaginaryInReal { .. }
            | Error::NonFinite { .. }
            | Error::BadShape { .. }
            | Error::InvalidBreakpoints(_) => ErrorKind::Malformed,
            Error::ExactSearchTooLarge { .. } | Error::ExactSearchComplex => ErrorKind::Capability,
            Error::ZeroVector
            | Error::SparsityOutOfRange { .. }
            | Error::NotUnimodular { .. }
            | Error::EmptySubspace
            | Error::OrthogonalToSubspace
            | Error::InvalidArgument(_)
            | Error::NegativeValue { .. }
            | Error::NotUnitNorm { .. }
            | Error::ZeroFunction => ErrorKind::Domain,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
