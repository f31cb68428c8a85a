use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("edge {0:?} is not in the hypergraph")]
    MissingEdge(Vec<usize>),
    #[error("too short: {0}")]
    TooShort(String),
    #[error("splice invalid: {0}")]
    SpliceInvalid(String),
    #[error("unsupported regime: k={k}, l={l} (only l < k/2 and l = k-1 are covered)")]
    UnsupportedRegime { k: usize, l: usize },
    #[error("invalid absorber: {0}")]
    InvalidAbsorber(String),
    #[error("placement error: {0}")]
    PlacementError(String),
    #[error("coloring conflict: {0}")]
    ColoringConflict(String),
    #[error("sampling failure: {0}")]
    SamplingFailure(String),
    #[error("hypothesis violated: {0}")]
    ContradictionFlag(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("stage {stage} failed: {detail}")]
    StagedFailure { stage: String, detail: String },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
