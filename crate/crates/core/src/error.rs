use thiserror::Error;

/// Errors raised by parameter validation and the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("stretch factor must be positive and finite, got {0}")]
    InvalidStretchFactor(f64),
    #[error("stretch angle must be finite, got {0}")]
    InvalidAngle(f64),
    #[error("winding map needs lambda > 0 and degree >= 2 (lambda = {lambda}, degree = {degree})")]
    InvalidWinding { lambda: f64, degree: u32 },
    #[error("quadratic coefficient must be nonzero")]
    DegenerateQuadratic,
    #[error("non-finite coefficient in composition")]
    NonFiniteCoefficient,
    #[error("stretch angle {0} lies outside [-pi/4, pi/4]")]
    AngleOutsideCanonicalRange(f64),
    #[error("no sign change of the cubic on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("invalid window: need x_min < x_max and y_min < y_max, all finite")]
    InvalidWindow,
    #[error("invalid grid: width, height and max_iter must be at least 1")]
    InvalidGrid,
    #[error("image dimensions {width}x{height} overflow")]
    DimensionOverflow { width: usize, height: usize },
    #[error("escape count {count} exceeds max_iter {max_iter}")]
    CountOutOfRange { count: u32, max_iter: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
