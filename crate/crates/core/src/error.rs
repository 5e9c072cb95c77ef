use thiserror::Error;

/// Errors raised across the toolkit.
///
/// `StructureViolation` and `Dimension` are outcomes of a verification run
/// on a random instance, not programming errors; callers decide whether to
/// retry with a derived seed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("staircase enumeration exceeded {cap} monomials (expected {expected}); ideal is likely not zero-dimensional")]
    Dimension { expected: usize, cap: usize },

    #[error("staircase structure violated at monomial {monomial}: x_n*b is neither in the staircase nor a leading monomial")]
    StructureViolation { monomial: String },

    #[error("ideal degree {degree} exceeds the guard {limit}; raise the guard to run anyway")]
    DegreeGuard { degree: String, limit: usize },

    #[error("shape position failure: {0}")]
    ShapePosition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
