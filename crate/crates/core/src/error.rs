use thiserror::Error;

/// Errors produced by graph construction, detection algorithms and loaders.
#[derive(Debug, Error)]
pub enum Error {
    #[error("node id {0} is out of range")]
    InvalidNode(usize),

    #[error("invalid edge ({u}, {v}): {reason}")]
    InvalidEdge { u: usize, v: usize, reason: String },

    #[error("invalid terminal sets: {0}")]
    InvalidTerminals(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("partition does not cover the graph: {0}")]
    PartitionMismatch(String),

    #[error("centrality undefined for node {0}: no reachable neighbors")]
    UndefinedCentrality(usize),

    #[error("graph is disconnected; run detection per connected component")]
    Disconnected,

    #[error("no feasible candidate: every terminal candidate was skipped or produced fewer than k parts")]
    NoFeasibleCandidate,

    #[error("cannot reach {wanted} parts: removal yields only {got} components")]
    CannotReachK { wanted: usize, got: usize },

    #[error("community count {k} does not divide node count {n}")]
    SizeNotDivisible { n: usize, k: usize },

    #[error("graph has no edges; maximum edge weight is undefined")]
    EdgelessGraph,

    #[error("parse error at {path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
