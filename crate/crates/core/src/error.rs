use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("elements {0} and {1} have no unique join or meet")]
    NotALattice(usize, usize),
    #[error("cover ({0}, {1}) is not index-increasing")]
    NotLinearExtension(usize, usize),
    #[error("missing minimum or maximum element")]
    NoExtremum,
    #[error("index {0} out of range for {1} elements")]
    IndexOutOfRange(usize, usize),
    #[error("convex set is empty")]
    EmptyConvexSet,
    #[error("set is not convex{}", .step.map(|s| format!(" (step {s})")).unwrap_or_default())]
    NotConvex { step: Option<usize> },
    #[error("lattice is not extremal")]
    NotExtremal,
    #[error("lattice is not semidistributive")]
    NotSemidistributive,
    #[error("irreducible numbering failed: {0}")]
    NumberingFailure(String),
    #[error("graph has a directed cycle")]
    GraphNotOrderable,
    #[error("lattice has a single element")]
    TrivialLattice,
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("solver budget of {0} ms exhausted")]
    Timeout(u64),
    #[error("graph contains a triangle")]
    NotTriangleFree,
    #[error("quiver is not a gentle tree: {0}")]
    NotGentle(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("theorem check failed: {0}")]
    TheoremViolation(String),
    #[error("pipeline assertion failed at {stage}: {detail}")]
    PipelineAssertionFailed { stage: &'static str, detail: String },
    #[error("unknown suite {0}")]
    SuiteUnknown(String),
    #[error("unsupported format {0}")]
    UnsupportedFormat(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of a mathematical assertion rather than bad input.
    pub fn is_assertion(&self) -> bool {
        matches!(
            self,
            Error::TheoremViolation(_)
                | Error::PipelineAssertionFailed { .. }
                | Error::NumberingFailure(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
