use thiserror::Error;

/// Errors produced by the laboratory.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Invalid construction parameters (bad modulus, empty seed set, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// A value or point lies outside its declared range.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// A table cell holds a value outside `[N]`.
    #[error("malformed table: cell {cell:?} holds {value}, range is {range}")]
    MalformedTable {
        cell: Vec<u32>,
        value: u32,
        range: u32,
    },

    /// A protocol did not halt within its step budget.
    #[error("protocol did not halt within {0} steps")]
    NonTermination(usize),

    /// An input argument violates a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A cover or coloring failed validation.
    #[error("invalid cover: {0}")]
    InvalidCover(String),

    /// Greedy completion to a linjection got stuck.
    #[error("completion failed at cell {0:?}: every value is forbidden")]
    Completion(Vec<u32>),

    /// A matching family or schedule violates its invariants.
    #[error("matching violation: {0}")]
    Matching(String),

    /// Two concurrent signals reached the same receiver.
    #[error("collision in family {family}, round {round}: receiver {receiver} hears senders {senders:?}")]
    Collision {
        family: usize,
        round: usize,
        receiver: u32,
        senders: Vec<u32>,
    },

    /// A proof-carrying invariant failed; this indicates an implementation bug.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
