use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vector norm {0:e} is too small to normalize")]
    ZeroVector(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ambient dimension {0} is not an even number >= 2")]
    InvalidDimension(usize),

    #[error("point is off the unit sphere (norm {0})")]
    OffManifold(f64),

    #[error("vector is not tangent at its base point (normal component {0:e})")]
    NotTangent(f64),

    #[error("vector field `{label}` is not tangent (normal component {defect:e})")]
    NonTangentField { label: String, defect: f64 },

    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("homothety factor must be positive, got {0}")]
    NonPositiveLambda(f64),

    #[error("imaginary part must be nonzero, got {0}")]
    RealParameter(f64),

    #[error("invalid sample configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot parse complex number `{0}`")]
    ComplexParse(String),

    #[error("k = {k} is outside 1..={max}")]
    KOutOfRange { k: usize, max: usize },

    #[error("span is not invariant under the complex structure (residual {0:e})")]
    NotComplexSubspace(f64),

    #[error("model mismatch: {0}")]
    ModelMismatch(String),

    #[error("model file line {line}: {msg}")]
    ModelParse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
