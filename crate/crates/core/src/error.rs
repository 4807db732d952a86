use thiserror::Error;

/// Why a graph6 string was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Graph6Fault {
    Empty,
    /// Byte outside the printable range `63..=126`.
    BadByte(u8),
    /// Fewer adjacency bytes than the header demands.
    Truncated,
    TrailingData,
    /// Long-form size field encodes a value that should have used a shorter form.
    NonCanonicalSize,
}

impl std::fmt::Display for Graph6Fault {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Graph6Fault::Empty => write!(f, "empty input"),
            Graph6Fault::BadByte(b) => write!(f, "byte 0x{b:02x} outside the graph6 range"),
            Graph6Fault::Truncated => write!(f, "adjacency data truncated"),
            Graph6Fault::TrailingData => write!(f, "unexpected trailing data"),
            Graph6Fault::NonCanonicalSize => write!(f, "size field is not in canonical form"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6 error at byte {offset}: {fault}")]
    Graph6 { offset: usize, fault: Graph6Fault },

    /// The graph exists (it parsed) but is too large for the requested operation.
    #[error("{what}: order {order} exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        order: usize,
        limit: usize,
    },

    #[error("2^{exponent} exceeds the exponent cap of {cap_bits} bits")]
    ExponentTooLarge { exponent: String, cap_bits: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("chord {0:?} is invalid: {1}")]
    InvalidChord((usize, usize), &'static str),

    #[error("input is not a tree")]
    NotATree,

    #[error("input graph is disconnected")]
    Disconnected,

    #[error("mean of an empty subtree family is undefined")]
    EmptyFamily,

    #[error("a tree consisting of a single B-vertex has no b-stem")]
    NoBStem,

    #[error("internal check failed: {0}")]
    Invariant(String),
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Resource,
    Invariant,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::TooLarge { .. } | Error::ExponentTooLarge { .. } => ErrorKind::Resource,
            Error::Invariant(_) => ErrorKind::Invariant,
            _ => ErrorKind::Input,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
