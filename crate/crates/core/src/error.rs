use thiserror::Error;

use crate::algebra::ValidationReport;

/// Errors raised by the algebraic operations of this crate.
///
/// Internal-consistency failures (`NoLift`, `RoundTripFailure`, `NotFree`)
/// indicate that a computation contradicted a theorem it relies on; they are
/// never expected on well-formed input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("algebra fails validation: {0}")]
    InvalidAlgebra(ValidationReport),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("algebra is not local: {0}")]
    NotLocal(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("operands live over different algebras")]
    AlgebraMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("not divisible by (z - zeta) at division step {step}: coefficient {index} leaves residual {residual:?}")]
    NotDivisible {
        step: usize,
        index: usize,
        residual: Vec<u32>,
    },
    #[error("insufficient precision: need {needed}, have {available}")]
    InsufficientPrecision { needed: usize, available: usize },
    #[error("precision exhausted")]
    PrecisionExhausted,
    #[error("base ring is not a field")]
    BaseNotField,
    #[error("(z - zeta)^{d} does not annihilate the cokernel; witness class {witness:?}")]
    NotAnnihilated { d: usize, witness: Vec<u32> },
    #[error("matrix is not invertible after inverting (z - zeta) within exponent {0}")]
    NotALocalShtuka(usize),
    #[error("object is not effective (twist {0})")]
    NotEffective(i64),
    #[error("zeta must be 0 for this operation")]
    ZetaNotZero,
    #[error("computation exceeds budget: {0}")]
    BudgetExceeded(String),
    #[error("module is not free: {0}")]
    NotFree(String),
    #[error("round trip failed: {0}")]
    RoundTripFailure(String),
    #[error("not a lift: {0}")]
    NotALift(String),
    #[error("tower condition fails: {0}")]
    NotAndersonDivisible(String),
    #[error("not a filtration: {0}")]
    NotAFiltration(String),
    #[error("no lift: {0}")]
    NoLift(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
