use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed cycle notation at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: u64, degree: usize },
    #[error("point {0} occurs more than once")]
    RepeatedPoint(u64),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a bijection of 0..{0}")]
    NotBijection(usize),
    #[error("{0} is not contained in the ambient group")]
    NotContained(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("index {0} is not a prime")]
    NotPrimeIndex(u64),
    #[error("group is not solvable")]
    NotSolvable,
    #[error("coset action of degree {index} exceeds the limit {limit}")]
    DegreeLimit { index: u64, limit: u64 },
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    OrderCap { order: u64, cap: u64 },
    #[error("class ordering mismatch: {0}")]
    Ordering(String),
    #[error("subgroup matches no class of the transversal: {0}")]
    UnmatchedClass(String),
    #[error("inconsistent mark constraints: {0}")]
    Inconsistent(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
}
