use thiserror::Error;

/// Errors raised by geometric operations.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum GeomError {
    #[error("origin is not an interior point of the body")]
    OriginNotInterior,
    #[error("point is not an interior point of the body")]
    PointNotInterior,
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("degenerate body: {0}")]
    DegenerateBody(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation requires dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("boundary curvature is degenerate (smallest tangential eigenvalue {0:e})")]
    CurvatureDegenerate(f64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid body spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
