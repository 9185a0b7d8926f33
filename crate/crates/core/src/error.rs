use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("sizing error: {0}")]
    Sizing(String),

    #[error("vertex {vertex} out of range for a {n}-vertex graph")]
    VertexOutOfRange { vertex: u64, n: usize },

    #[error("invalid edge: {0}")]
    InvalidEdge(String),

    #[error("density is undefined for an edgeless pattern")]
    Edgeless,

    #[error("pattern too large: {0}")]
    PatternTooLarge(String),

    #[error("uniformity mismatch: expected r={expected}, found r={found}")]
    UniformityMismatch { expected: usize, found: usize },

    #[error("copy indices do not share the same host")]
    HostMismatch,

    #[error("exact packing infeasible: {copies} copies exceed the cap of {cap}")]
    PackingInfeasible { copies: usize, cap: usize },

    #[error("exact packing infeasible: search exceeded {budget} node expansions")]
    PackingBudgetExhausted { budget: u64 },

    #[error("invalid edge order: {0}")]
    InvalidOrder(String),

    #[error("rule violation at turn {turn}: {reason}")]
    RuleViolation { turn: usize, reason: String },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("pattern is not strictly {r}-balanced: {detail}")]
    NotStrictlyBalanced { r: usize, detail: String },

    #[error("unknown pattern name `{0}`")]
    UnknownPattern(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
