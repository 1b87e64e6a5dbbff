use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot express a value of conductor {from} at conductor {to}")]
    IncompatibleConductor { from: u32, to: u32 },
    #[error("operands belong to different groups")]
    ParentMismatch,
    #[error("group of order {order} exceeds the configured bound {bound}")]
    SizeBound { order: usize, bound: usize },
    #[error("element {0} is not in the subgroup")]
    NotInSubgroup(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("rewriting system is not confluent: {0}")]
    ConfluenceFailure(String),
    #[error("isomorphism check failed: {0}")]
    IsoCheckFailed(String),
    #[error("hypothesis ({condition}) violated: {detail}")]
    HypothesisViolated { condition: u8, detail: String },
    #[error("invalid Hopf 2-cocycle: {0}")]
    CocycleInvalid(String),
    #[error("subspace not closed: {0}")]
    NotClosed(String),
    #[error("not an exterior-algebra datum: {0}")]
    NotExteriorDatum(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
