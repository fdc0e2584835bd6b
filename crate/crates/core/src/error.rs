use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// Variants are grouped by the layer that raises them; callers that need to
/// distinguish "instance too large" from "instance malformed" should use
/// [`Error::is_budget`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // graph / scheme / configuration validation
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} has no block assignment")]
    MissingBlock(usize),
    #[error("block values must be positive (vertex {0})")]
    ZeroBlock(usize),
    #[error("size mismatch: {what} has length {got}, expected {expected}")]
    SizeMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("invalid threshold {num}/{den}: need 0 < a/b < 1")]
    InvalidThreshold { num: u64, den: u64 },

    // circuits
    #[error("gate {gate}: source {src} does not precede it")]
    SourceOrder { gate: usize, src: usize },
    #[error("gate {gate}: {reason}")]
    BadGate { gate: usize, reason: String },
    #[error("circuit has NOT gates but a monotone circuit is required")]
    NonMonotone,
    #[error("circuit is not iterable ({inputs} inputs, {outputs} outputs)")]
    NotIterable { inputs: usize, outputs: usize },
    #[error("circuit is not synchronized: {0}")]
    NotSynchronized(String),
    #[error("degree bound violated: {0}")]
    DegreeBound(String),

    // gadgets and solvers
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    // text formats
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// True when the error signals a resource limit rather than a malformed input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
