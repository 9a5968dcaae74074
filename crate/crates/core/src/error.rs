use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("linear system is rank deficient (rank {rank} < {cols} unknowns)")]
    RankDeficient { rank: usize, cols: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported cone dimension {0} (supported: 1..=4)")]
    UnsupportedDimension(usize),
    #[error("zero vector is not a valid cone generator")]
    ZeroGenerator,
    #[error("V- and H-representations describe different cones")]
    InconsistentRepresentation,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("basis {basis} is not valid here: {reason}")]
    InvalidBasis { basis: String, reason: String },
    #[error("curve class {curve} is not available: {reason}")]
    InvalidCurve { curve: String, reason: String },
    #[error("classes live over different parameters")]
    ParamsMismatch,
    #[error("no upper bound available: {0}")]
    NoUpperBound(String),
    #[error("conjectural value of t refused for genus {0} (opt in to use it)")]
    ConjecturalTRefused(u32),
    #[error("certificates contradict each other: {0}")]
    ContradictoryCertificates(String),
}
