use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field order {p}^{m} is outside the supported range (2..=65536)")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("element encoding {enc} is not below q = {q}")]
    InvalidElement { enc: u32, q: u32 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("element {0} is not a square")]
    NotSquare(u32),
    #[error("{d} does not divide q - 1 = {order}")]
    NoRootOfUnity { d: u32, order: u32 },
    #[error("elements or matrices come from different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("generator matrix does not have full row rank")]
    RankDeficient,
    #[error("evaluation point {0} occurs more than once")]
    DuplicatePoint(u32),
    #[error("evaluation set is empty")]
    EmptyEvaluationSet,
    #[error("multiplier at position {0} is zero")]
    ZeroMultiplier(usize),
    #[error("polynomial degree {degree} is not below {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("GF({0}) has no nonzero alpha with alpha^2 != 1 (need q > 3)")]
    NoAlpha(u32),
    #[error("every field element is already an evaluation point (need n < q)")]
    NoFreePoint,
    #[error("{0}")]
    Unreachable(String),
    #[error("code is not self-orthogonal at dimension {0}")]
    NotSelfOrthogonal(usize),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("square-class check failed: {0}")]
    QrCheckFailed(String),
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
}
