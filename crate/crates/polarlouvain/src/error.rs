//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by graph ingestion, measure construction, and detection.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: u64, msg: String },

    #[error("self-loop rejected at line {line}: node {label:?}")]
    SelfLoop { line: u64, label: String },

    #[error("edge at line {line} repeats {a:?}-{b:?} and directed collapse is off")]
    DuplicateEdge { line: u64, a: String, b: String },

    #[error("edge list contains no edges")]
    EmptyGraph,

    #[error("membership labels do not match the graph (missing: {missing:?}, extra: {extra:?})")]
    LabelMismatch {
        missing: Vec<String>,
        extra: Vec<String>,
    },

    #[error("no conflict exists between any pair; the risk measure is undefined")]
    DegeneratePolarization,

    #[error("no dialogue exists between any pair; the dialogue measure is undefined")]
    DegenerateDialogue,

    #[error("modularity is undefined: total weight is zero")]
    UndefinedModularity,

    #[error("cohesion is undefined: no community has more than one node")]
    UndefinedScore,

    #[error("brute-force Shapley is capped at {max} nodes, got {n}; use the closed form")]
    SizeLimit { n: usize, max: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the batch CLI: 2 for config/input errors,
    /// 3 for degenerate-measure conditions.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DegeneratePolarization
            | Error::DegenerateDialogue
            | Error::UndefinedScore
            | Error::UndefinedModularity => 3,
            _ => 2,
        }
    }

    /// Short machine-parsable tag used in the CLI's one-line error output.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::SelfLoop { .. } => "self-loop",
            Error::DuplicateEdge { .. } => "duplicate-edge",
            Error::EmptyGraph => "empty-graph",
            Error::LabelMismatch { .. } => "label-mismatch",
            Error::DegeneratePolarization => "degenerate-polarization",
            Error::DegenerateDialogue => "degenerate-dialogue",
            Error::UndefinedModularity => "undefined-modularity",
            Error::UndefinedScore => "undefined-score",
            Error::SizeLimit { .. } => "size-limit",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
