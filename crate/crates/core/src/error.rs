use thiserror::Error;

/// Errors raised by the quiver, hereditary and orbit-category layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quiver is not mutation-admissible: {0}")]
    Inadmissible(String),

    #[error("vertex {vertex} out of range for a quiver with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("{n} vertices exceeds the canonicalization cap of {cap}")]
    CanonicalCapExceeded { n: usize, cap: usize },

    #[error("quiver has an oriented cycle")]
    Cyclic,

    #[error("infinite type: underlying graph is not a union of Dynkin diagrams")]
    InfiniteType,

    #[error("{0:?} is not a positive root")]
    NotARoot(Vec<i64>),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("outside transjective range: {0}")]
    OutsideTransjectiveRange(String),

    #[error("not a proper orbit quotient: {0}")]
    NotProperOrbitQuotient(String),

    #[error("object {0} does not belong to this model")]
    ForeignObject(usize),

    #[error("{n} objects exceeds the enumeration cap of {cap}")]
    ObjectCapExceeded { n: usize, cap: usize },

    #[error("mesh reduction did not stabilize after {0} path lengths")]
    MeshNotStabilizing(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A computed quantity violated an identity that must hold; never valid output.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
