use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid shift matrix: {0}")]
    InvalidShift(String),
    #[error("invalid sign sequence: {0}")]
    InvalidSigns(String),
    #[error("invalid pyramid: {0}")]
    InvalidPyramid(String),
    #[error("element has odd terms; an even element is required")]
    OddElement,
    #[error("element is not supported on U(p): {0}")]
    NotInUp(String),
    #[error("pair ({0}, {1}) is not in the parabolic p")]
    NotInP(String, String),
    #[error("inadmissible generator: {0}")]
    Inadmissible(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("polynomial does not split over the rationals: {0}")]
    NonSplit(String),
    #[error("root finder did not converge: {0}")]
    NoConvergence(String),
    #[error("{0} out of range")]
    OutOfRange(String),
    #[error("tableau is not column-connected")]
    NotColumnConnected,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}
