use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid root system {label}{rank}: {reason}")]
    InvalidRootSystem { label: char, rank: usize, reason: String },

    #[error("standing hypothesis violated: {0}")]
    StandingHypothesis(String),

    #[error("lie algebra violates {kind} at basis triple ({i}, {j}, {k})")]
    Violation { kind: ViolationKind, i: usize, j: usize, k: usize },

    #[error("ad x is not nilpotent; the exponential is not rational")]
    NotNilpotent,

    #[error("resource guard exceeded: {what} (limit {limit}, requested {requested})")]
    Resource { what: String, limit: usize, requested: usize },

    #[error("truncation is not a subalgebra: {0}")]
    BadTruncation(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    Antisymmetry,
    Jacobi,
    WeightAdditivity,
}

impl std::fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ViolationKind::Antisymmetry => f.write_str("antisymmetry"),
            ViolationKind::Jacobi => f.write_str("the Jacobi identity"),
            ViolationKind::WeightAdditivity => f.write_str("weight additivity"),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
