use thiserror::Error;

/// Errors raised by the chip-firing engine and its certificate checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("loop at vertex {0}: loops are not allowed")]
    Loop(usize),
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has parallel edges but a simple graph is required")]
    NotSimple,
    #[error("vertex set must be nonempty")]
    EmptySet,
    #[error("vertex set must be a proper subset of the vertices")]
    FullSet,
    #[error("vertex sets overlap")]
    Overlapping,
    #[error("size {value} out of range {min}..={max}")]
    SizeOutOfRange { value: usize, min: usize, max: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("divisors live on different graphs")]
    GraphMismatch,
    #[error("chip count overflowed 64-bit arithmetic")]
    Overflow,
    #[error("vertex {0} is in debt but only the sink may carry debt")]
    DebtOffSink(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("search budget exhausted; the answer lies in {lower}..={upper}")]
    BudgetExhausted { lower: u64, upper: u64 },
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
