//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by basis construction, symbol maps, and the solvers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An operator or symbol does not match the size the basis expects.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A probability or other bounded parameter fell outside its range.
    #[error("{name} = {value} is outside [0, 1]")]
    OutOfRange { name: String, value: f64 },

    /// Reconstruction or kernel computation was requested before the
    /// quantizers were supplied or solved.
    #[error("operator basis carries no quantizers")]
    MissingQuantizers,

    /// A matrix that must be Hermitian is not, within the default tolerance.
    #[error("{what} is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { what: String, deviation: f64 },

    /// A unit-trace or traceless constraint is violated.
    #[error("{what} violates trace constraint: expected {expected}, found {found:.17e}")]
    TraceConstraint {
        what: String,
        expected: f64,
        found: f64,
    },

    /// A dequantizer set declared self-dual fails the orthonormality condition.
    #[error("dequantizers are not orthonormal (deviation {deviation:.3e})")]
    NotOrthonormal { deviation: f64 },

    /// The coefficient-matching system is rank deficient.
    #[error("linear system is rank deficient: rank {rank} of {size}")]
    RankDeficient { rank: usize, size: usize },

    /// The Gram matrix of the dequantizers cannot be inverted.
    #[error("Gram matrix is singular (condition number {condition:.3e})")]
    SingularGram { condition: f64 },

    /// A solve succeeded but its residual exceeds the requested tolerance.
    #[error("solve residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    ResidualTooLarge { residual: f64, tol: f64 },

    /// Representations are only defined for dimension two and above.
    #[error("dimension must be at least 2, got {dim}")]
    DimensionTooSmall { dim: usize },

    /// Malformed construction input: ragged rows, wrong counts, and the like.
    #[error("{what}")]
    BadShape { what: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of the numerical machinery itself (rank deficiency,
    /// singular Gram matrices, residual breaches) as opposed to invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::RankDeficient { .. }
                | Error::SingularGram { .. }
                | Error::ResidualTooLarge { .. }
        )
    }
}
