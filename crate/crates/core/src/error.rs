use thiserror::Error;

/// Errors raised by the exact engine and the sampling oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QstatError {
    #[error("level count must be at least 1")]
    NoLevels,
    #[error("fermion overfill: {n} fermions cannot occupy {k} levels")]
    FermionOverfill { k: usize, n: u32 },
    #[error("state space too large: {count} occupation vectors exceeds the cap of {cap}")]
    StateSpaceTooLarge { count: String, cap: u64 },
    #[error("level {level} is out of range for {k} levels")]
    LevelOutOfRange { level: usize, k: usize },
    #[error("expected {expected} entries, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("minimum occupancy must be positive")]
    ZeroMinimum,
    #[error("empty conditioning: no state has at least {minimum} particle(s) in level {level}")]
    EmptyConditioning { level: usize, minimum: u32 },
    #[error("zero-probability draw: the observation is impossible under this ensemble")]
    ZeroProbabilityDraw,
    #[error("record draws {drawn} particles but only {available} are present")]
    RecordTooLarge { drawn: u32, available: u32 },
    #[error("the system holds no particles")]
    EmptySystem,
    #[error("ensemble is invalid: {0}")]
    InvalidEnsemble(String),
    #[error("no trial satisfied the condition within {trials} trials")]
    NoAcceptedTrials { trials: u64 },
    #[error("trial count must be at least 1")]
    NoTrials,
    #[error("unknown statistics '{0}' (expected classical, be or fd)")]
    UnknownStatistics(String),
}

impl QstatError {
    /// Variant name, for diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            QstatError::NoLevels => "NoLevels",
            QstatError::FermionOverfill { .. } => "FermionOverfill",
            QstatError::StateSpaceTooLarge { .. } => "StateSpaceTooLarge",
            QstatError::LevelOutOfRange { .. } => "LevelOutOfRange",
            QstatError::LengthMismatch { .. } => "LengthMismatch",
            QstatError::ZeroMinimum => "ZeroMinimum",
            QstatError::EmptyConditioning { .. } => "EmptyConditioning",
            QstatError::ZeroProbabilityDraw => "ZeroProbabilityDraw",
            QstatError::RecordTooLarge { .. } => "RecordTooLarge",
            QstatError::EmptySystem => "EmptySystem",
            QstatError::InvalidEnsemble(_) => "InvalidEnsemble",
            QstatError::NoAcceptedTrials { .. } => "NoAcceptedTrials",
            QstatError::NoTrials => "NoTrials",
            QstatError::UnknownStatistics(_) => "UnknownStatistics",
        }
    }
}

pub type Result<T> = std::result::Result<T, QstatError>;
