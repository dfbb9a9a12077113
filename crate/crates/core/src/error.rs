use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("direction {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("matrix is not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("exploration exceeded the cap of {cap} clusters (possibly infinite type)")]
    CapExceeded { cap: usize },
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polyhedron is empty")]
    Empty,
    #[error("zero polynomial has no Newton polytope")]
    ZeroPolynomial,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A mathematical invariant failed. Never expected for valid finite-type input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
