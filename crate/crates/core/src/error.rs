use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("variable list is empty")]
    NoVariables,
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("free module rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("inhomogeneous element where a homogeneous one is required: {0}")]
    Inhomogeneous(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree cap {cap} insufficient: {reason}")]
    DegreeCap { cap: i64, reason: String },
    #[error("window of values is not polynomial of the expected degree: {0}")]
    NonPolynomialWindow(String),
    #[error("candidate prime lacks a certificate: {0}")]
    UncertifiedPrime(String),
    #[error("ideal is not contained in the annihilator of the graded piece {0}")]
    NotInAnnihilator(i64),
    #[error("not a regular sequence: {0}")]
    NotRegularSequence(String),
    #[error("homotopy window exceeds the computed resolution (need {need}, have {have})")]
    WindowExceedsResolution { need: usize, have: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
