use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("n = {n} too small to pad a partition of size {size} with first part {first}")]
    PadTooSmall { n: usize, size: usize, first: usize },
    #[error("dominance comparison needs equal sizes, got {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("invalid tabloid: {0}")]
    InvalidTabloid(String),
    #[error("level n = {n} is below the instantiation threshold {threshold}")]
    BelowThreshold { n: usize, threshold: usize },
    #[error("basis of dimension {dim} exceeds the budget of {budget} elements")]
    OverBudget { dim: u128, budget: usize },
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("p-adic residue needs at least {needed} digits, has {have}")]
    InsufficientDigits { needed: u32, have: u32 },
    #[error("invalid p-adic residue: {0}")]
    InvalidResidue(String),
    #[error("interpolation failed validation: {0}")]
    InterpolationFailed(String),
    #[error("stabilization check failed: {0}")]
    NotStable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("meataxe gave up after {0} random elements")]
    MeatAxeExhausted(usize),
    #[error("could not identify composition factor: {0}")]
    Unidentified(String),
    #[error("window of length {len} too short for period detection")]
    WindowTooShort { len: usize },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::InvalidPartition(_) => "invalid_partition",
            Error::PadTooSmall { .. } => "pad_too_small",
            Error::SizeMismatch(..) => "size_mismatch",
            Error::InvalidTabloid(_) => "invalid_tabloid",
            Error::BelowThreshold { .. } => "below_threshold",
            Error::OverBudget { .. } => "over_budget",
            Error::NotEquivariant(_) => "not_equivariant",
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::InsufficientDigits { .. } => "insufficient_digits",
            Error::InvalidResidue(_) => "invalid_residue",
            Error::InterpolationFailed(_) => "interpolation_failed",
            Error::NotStable(_) => "not_stable",
            Error::Precondition(_) => "precondition",
            Error::MeatAxeExhausted(_) => "meataxe_exhausted",
            Error::Unidentified(_) => "unidentified",
            Error::WindowTooShort { .. } => "window_too_short",
            Error::Overflow(_) => "overflow",
            Error::Parse(_) => "parse",
        }
    }
}
