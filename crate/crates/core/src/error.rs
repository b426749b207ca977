use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("bad constant term: {0}")]
    BadConstantTerm(String),
    #[error("crank of the partition (1) is a counting convention, not a statistic value")]
    ConventionCase,
    #[error("window too large: n = {requested} exceeds the enumeration ceiling {ceiling}")]
    WindowTooLarge { requested: usize, ceiling: usize },
    #[error("exponent {numerator}/2 is not a non-negative integer")]
    FractionalExponent { numerator: i64 },
    #[error("family has no member with index {0}")]
    MissingMember(usize),
    #[error("window underflow: {0}")]
    WindowUnderflow(String),
    #[error("pole order {0} exceeds the supported bound")]
    PoleOrder(i64),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
}
