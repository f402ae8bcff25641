use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("prime {0} is outside the configured allowlist")]
    PrimeNotAllowed(u32),
    #[error("unsupported quiver: {0}")]
    UnsupportedQuiver(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("representations live over different fields or quivers")]
    FieldMismatch,
    #[error("catalog cap {cap} is below the required total dimension {needed}")]
    CatalogInsufficient { cap: usize, needed: usize },
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("slope of the zero vector is undefined")]
    ZeroVector,
    #[error("central charge vanishes on {0}")]
    ZeroCharge(String),
    #[error("invalid stability data: {0}")]
    InvalidStability(String),
    #[error("operation needs a nonzero object")]
    ZeroObject,
    #[error("maximal destabilizing subobject is not unique for {0}")]
    NonUniqueMaximal(String),
    #[error("Hall polynomial fits did not stabilize within {0} primes")]
    NoStabilization(usize),
    #[error("series has the wrong constant term for {0}")]
    BadConstantTerm(&'static str),
    #[error("shift {shift} outside window [{lo}, {hi}]")]
    WindowExceeded { shift: i32, lo: i32, hi: i32 },
    #[error("phase undefined: central charge is zero on {0}")]
    UndefinedPhase(String),
    #[error("heart not supported by this backend: {0}")]
    UnsupportedHeart(String),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("impossible configuration: {0}")]
    ImpossibleConfiguration(String),
    #[error("no silting label for this row")]
    NoLabel,
    #[error("table row {0} has no witness")]
    RowUnrealized(usize),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("commutation failure: {0}")]
    CommutationFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
}
