use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("{n} vertices exceeds capacity {capacity}")]
    TooManyVertices { n: usize, capacity: usize },
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency is not symmetric: {u}->{v} present, {v}->{u} missing")]
    Asymmetric { u: usize, v: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("malformed length byte {0:#04x}")]
    BadLengthByte(u8),
    #[error("long-form header (n > 62) is not supported")]
    LongForm,
    #[error("byte {byte:#04x} at offset {offset} is outside 63..=126")]
    InvalidChar { offset: usize, byte: u8 },
    #[error("truncated payload: expected {expected} data bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("payload too long: expected {expected} data bytes, found {found}")]
    TrailingData { expected: usize, found: usize },
    #[error("nonzero padding bits in final byte")]
    NonzeroPadding,
    #[error("graph with {0} vertices cannot use the short-form header")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Argument and precondition failures of the algorithm modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("path endpoints must be distinct (got {0} twice)")]
    SameEndpoints(usize),
    #[error("path order {k} out of range 2..={n}")]
    PathOrderOutOfRange { k: usize, n: usize },
    #[error("cycle length {len} out of range 3..={n}")]
    CycleLengthOutOfRange { len: usize, n: usize },
    #[error("cycle order t={t} out of range 3..={max}")]
    CycleOrderOutOfRange { t: usize, max: usize },
    #[error("pattern H(m={m}, l) needs m >= 2")]
    PatternTooSmall { m: usize },
    #[error("family parameter out of range: {0}")]
    FamilyParameter(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}
