use thiserror::Error;

/// Errors reported by the index structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("monotonicity violation: min({lcp_pred}, {lcp_succ}) != {current}")]
    MonotonicityViolation {
        lcp_pred: usize,
        lcp_succ: usize,
        current: usize,
    },
    #[error("predecessor and successor are not adjacent")]
    AdjacencyViolation,
    #[error("invalid or stale handle")]
    InvalidHandle,
    #[error("underflow")]
    Underflow,
    #[error("index {index} out of range 1..={len}")]
    OutOfRange { index: usize, len: usize },
    #[error("symbol code 0 is reserved for the sentinel")]
    ReservedSymbol,
    #[error("node still has children")]
    HasChildren,
    #[error("depth {depth} exceeds node depth {node_depth}")]
    DepthOutOfRange { depth: usize, node_depth: usize },
    #[error("input of length {len} exceeds the oracle bound {limit}")]
    OracleBound { len: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
