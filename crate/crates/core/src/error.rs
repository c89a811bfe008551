use thiserror::Error;

/// Errors shared across the crate. All constructors validate their
/// inputs eagerly so that downstream code can assume invariants hold.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoreError {
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("could not parse rational from {0:?}")]
    BadRational(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("probability vector must be strictly positive and sum to 1")]
    NotAProbability,
    #[error("random variable must be nonnegative")]
    NegativeEntry,
    #[error("measure weights must be nonnegative")]
    NegativeWeight,
    #[error("convex body needs at least one point")]
    EmptyBody,
    #[error("rays must be nonnegative and nonzero")]
    BadRay,
    #[error("convex body generators must be nonnegative")]
    BodyOutsideOrthant,
    #[error("element does not belong to the body")]
    NotInBody,
    #[error("g must be strictly positive on the body")]
    NotStrictlyPositive,
    #[error("g vanishes identically")]
    ZeroNumeraire,
    #[error("malformed linear program: {0}")]
    MalformedLp(String),
    #[error("{0} is not the square of a rational")]
    NotASquare(String),
    #[error("constraint parameters must satisfy 0 <= t2, t2^2 <= t1 <= 1")]
    OutsideConstraintSet,
    #[error("xi must be strictly positive on every atom")]
    XiNotPositive,
    #[error("xi_min must lie strictly between 0 and 1")]
    ThresholdOutOfRange,
    #[error("1+n must be a perfect square, got {0}")]
    NotAPerfectSquare(u64),
    #[error("explicit solid hull refused for n > {limit} atoms (got {got})")]
    SolidHullTooLarge { limit: usize, got: usize },
    #[error("solid set has no explicit generators (membership-only mode)")]
    MembershipOnly,
    #[error("the all-ones vector does not belong to the underlying set")]
    OneNotInSet,
}
