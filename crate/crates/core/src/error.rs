use thiserror::Error;

use crate::digital::LatticePoint;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lattice points must have at least one coordinate")]
    EmptyPoint,
    #[error("digital images must contain at least one point")]
    EmptyImage,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate point {0}")]
    DuplicatePoint(LatticePoint),
    #[error("point {0} is not in the image")]
    NotInImage(LatticePoint),
    #[error("map is not defined at {0}")]
    MissingValue(LatticePoint),
    #[error("map value {value} at {point} is not in the codomain")]
    ValueOutsideCodomain {
        point: LatticePoint,
        value: LatticePoint,
    },
    #[error("images do not match: {0}")]
    ImageMismatch(String),
    #[error("map is not continuous: {0} and {1} are adjacent but their images are not")]
    Discontinuous(LatticePoint, LatticePoint),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cover verification failed: {0}")]
    VerificationFailed(String),
    #[error("search budget of {budget} candidate evaluations exceeded")]
    BudgetExceeded { budget: u64 },
}
