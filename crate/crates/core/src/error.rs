use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("field order {order} exceeds the cap of {cap}")]
    OrderTooLarge { order: u64, cap: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("plane order {order} exceeds the cap of {cap}")]
    PlaneTooLarge { order: u64, cap: u64 },
    #[error("plane order {0} is odd; hyperovals exist only for even orders")]
    OddOrder(usize),

    #[error("lines {first} and {second} share {shared:?}; linear systems allow at most one common point")]
    LinearityViolation {
        first: usize,
        second: usize,
        shared: Vec<usize>,
    },
    #[error("point index {index} out of range for {num_points} points")]
    BadIndex { index: usize, num_points: usize },
    #[error("line index {index} out of range for {num_lines} lines")]
    BadLineIndex { index: usize, num_lines: usize },
    #[error("lines {first} and {second} are identical")]
    DuplicateLine { first: usize, second: usize },
    #[error("line {0} is empty")]
    EmptyLine(usize),
    #[error("system has no lines")]
    NoLines,
    #[error("system is not {0}-uniform")]
    NotUniform(usize),
    #[error("system is not intersecting")]
    NotIntersecting,

    #[error("{what} of size {size} exceeds the cap of {cap}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("search cancelled")]
    Cancelled,

    #[error("system is not a member of I_{r}: {reason}")]
    NotMember { r: usize, reason: String },
    #[error("no pendant-point star subsystem exists for r = {0}")]
    NoStarFound(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
