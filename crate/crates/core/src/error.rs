use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("entry {index} is not strictly positive ({value})")]
    NonPositiveEntry { index: usize, value: String },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("point outside the open polytope: {0}")]
    OutsideInterior(String),

    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    #[error("product of the source entries ({source_product}) does not exceed the target product ({target_product})")]
    ProductNotDecreasing {
        source_product: String,
        target_product: String,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty vector: at least one entry is required")]
    Empty,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
