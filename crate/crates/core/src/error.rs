use crate::qstate::Label;

/// Errors raised by the state engine, strategies and analysis routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("state is not normalized (squared norm {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },
    #[error("label {0} appears more than once")]
    LabelCollision(Label),
    #[error("label {0} is not in the register")]
    UnknownLabel(Label),
    #[error("invalid bipartition cut: {0}")]
    InvalidCut(String),
    #[error("projection has vanishing probability {probability:e}; posterior undefined")]
    ProjectionVanishes { probability: f64 },
    #[error("operator is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("strategy register mismatch: {0}")]
    StrategyRegisterMismatch(String),
    #[error("degenerate branch: both coefficients vanish")]
    DegenerateBranch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
