use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient of vertex `{vertex}` in hyperedge `{hyperedge}` is zero")]
    ZeroCoefficient { hyperedge: String, vertex: String },

    #[error("coefficient of vertex `{vertex}` in hyperedge `{hyperedge}` is not finite")]
    NonFiniteCoefficient { hyperedge: String, vertex: String },

    #[error("vertex `{0}` is not contained in any hyperedge")]
    IsolatedVertex(String),

    #[error("identifier `{0}` is used more than once")]
    DuplicateIdentifier(String),

    #[error("hyperedge `{0}` contains no vertices")]
    EmptyHyperedge(String),

    #[error("hypergraph has no vertices")]
    NoVertices,

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown hyperedge `{0}`")]
    UnknownHyperedge(String),

    #[error("weak deletion would leave vertex `{0}` in no hyperedge")]
    WouldIsolate(String),

    #[error("weak deletion would remove every vertex")]
    DeleteAll,

    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("the function is identically zero")]
    ZeroFunction,

    #[error("eigensolver failed to converge on {0}")]
    EigensolverFailure(String),

    #[error("hypergraph is disconnected ({0} components)")]
    Disconnected(usize),

    #[error("conditions not met: {0}")]
    ConditionsNotMet(String),

    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("automorphism is not an involution: {0}")]
    NotInvolution(String),

    #[error("invalid motif: {0}")]
    InvalidMotif(String),

    #[error("not a duplicated motif: {0}")]
    NotDuplicatedMotif(String),

    #[error("{count} hyperedges exceed the enumeration limit of {limit}")]
    TooLarge { count: usize, limit: usize },

    #[error("numerical check failed: {0}")]
    Numerical(String),
}

impl Error {
    /// True for failures of the floating point machinery rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::EigensolverFailure(_) | Error::Numerical(_))
    }
}
