use thiserror::Error;

/// Errors surfaced by the analysis pipeline.
#[derive(Debug, Error)]
pub enum ItemError {
    #[error("line {line}: cannot parse edge record: {reason}")]
    ParseEdge { line: usize, reason: String },

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error("motif {motif} has no edges; temporal variants are undefined")]
    EdgelessMotif { motif: String },

    #[error("instance limit {limit} exceeded for motif {motif} ({found} instances found so far)")]
    InstanceLimit {
        motif: String,
        limit: usize,
        found: usize,
    },

    #[error("exact independent-set solver refuses {vertices} vertices (limit {limit})")]
    ExactMisTooLarge { vertices: usize, limit: usize },

    #[error("brute-force oracle refuses graph with {edges} edges (limit {limit})")]
    OracleTooLarge { edges: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("feature schema mismatch: {0}")]
    SchemaMismatch(String),

    #[error("sampling plan covers {plan} windows but {actual} were provided")]
    PlanMismatch { plan: usize, actual: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, ItemError>;
