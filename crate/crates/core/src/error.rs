use alloc::string::String;

use crate::arith::Rational;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("at least one weight is required")]
    EmptyWeights,
    #[error("degrees must be positive")]
    NonPositiveDegree,
    #[error("truncation caps differ ({left} vs {right})")]
    CapMismatch { left: usize, right: usize },
    #[error("reciprocal factor with zero constant term")]
    ZeroFactor,
    #[error("negative Q-exponent {0} in an effective Novikov scalar")]
    NegativeExponent(Rational),
    #[error("{0} is not a sector index of this weighted projective space")]
    NotInSectorSet(Rational),
    #[error("degree {0} has fractional part outside the sector set")]
    DegreeNotInSectorSet(Rational),
    #[error("expected a nonnegative value, got {0}")]
    Negative(Rational),
    #[error("index {index} out of range (size {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("series is not invertible: zero constant term")]
    NotInvertible,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("series truncated below degree {needed}")]
    SeriesTooShort { needed: Rational },
    #[error("unexpected contribution from degree {degree}: {detail}")]
    UnexpectedContribution { degree: Rational, detail: String },
    #[error("matrix mismatch at ({row}, {col}): expected {expected}, found {found}")]
    MatrixMismatch {
        row: usize,
        col: usize,
        expected: String,
        found: String,
    },
    #[error("{0}")]
    Inconsistent(String),
    #[error("I-function shape failure: {0}")]
    ShapeFailure(String),
    #[error("operation requires a quasismooth complete intersection")]
    QuasismoothRequired,
    #[error("operation requires k_X <= 0 (got {0})")]
    PositiveCanonical(i64),
    #[error("invalid matching data: {0}")]
    InvalidMatching(String),
    #[error("invalid cyclic quotient: {0}")]
    InvalidQuotient(String),
}
