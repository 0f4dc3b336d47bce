use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("the zero polynomial has no multiplicity or degree")]
    ZeroPolynomial,
    #[error("frame matrix is singular")]
    SingularFrame,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("a local basis was supplied where a global one is required")]
    LocalBasis,
    #[error("saturation did not stabilize after {0} quotients")]
    SaturationLimit(usize),
    #[error("the origin is not a point of V(I)")]
    OriginNotInVariety,
    #[error("the origin is not a critical point of f")]
    NotCritical,
    #[error("constant polynomial has no critical locus")]
    ConstantPolynomial,
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("coefficient does not reduce modulo the working prime")]
    BadReduction,
}

pub type Result<T> = std::result::Result<T, Error>;
