use thiserror::Error;

/// Unified error type for graph construction, solving and reporting.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown node id {0}")]
    UnknownNode(u32),

    #[error("no edge between {0} and {1}")]
    MissingEdge(u32, u32),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("scenario generation failed: {0}")]
    GenerationFailure(String),

    #[error("graph has {nodes} nodes, exhaustive search is capped at {guard}")]
    GraphTooLarge { nodes: usize, guard: usize },

    #[error("could not build an initial population of valid routes")]
    InitializationFailure,

    #[error("no feasible route from start to destination")]
    NoFeasibleRoute,

    #[error("bad configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
