//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime below 2^31")]
    BadModulus(u64),
    #[error("matrix dimensions are incompatible: {0}")]
    DimensionMismatch(String),
    #[error("composition of the two boundary maps is not zero")]
    CompositionNotZero,
    #[error("operation requires a monomial ideal but a generic component was found in degree {0}")]
    NotMonomial(usize),
    #[error("prescribed dimensions are not the Hilbert function of any graded ideal (segment breaks in degree {0})")]
    NotRealizable(usize),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("ideal is not squarefree strongly stable")]
    NotStable,
    #[error("symmetric ideal has a non-squarefree generator")]
    NotSquarefree,
    #[error("random trials disagree after resampling; increase the prime or the trial count")]
    GenericityFailure,
    #[error("generic initial ideal fails the stability check (characteristic interference?)")]
    StabilityFailure,
    #[error("stretched generator needs variable index {needed} but the ambient ring has only {ambient}")]
    AmbientTooSmall { needed: usize, ambient: usize },
    #[error("the two computation routes disagree: {0}")]
    RouteMismatch(String),
    #[error("primary route and oracle disagree: {0}")]
    OracleDisagreement(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
