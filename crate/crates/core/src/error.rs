use thiserror::Error;

/// Errors surfaced by the library.
///
/// Fallible operations return `Result<_, Error>`; internal invariant
/// violations that callers cannot trigger use [`Error::Internal`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {0} is not a vertex of the quiver")]
    UnknownVertex(u32),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(u32),
    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{id}` has endpoint {vertex} outside the vertex set")]
    BadArrowEndpoint { id: String, vertex: u32 },
    #[error("quiver has a loop at vertex {0}")]
    LoopAtVertex(u32),
    #[error("quiver has an oriented cycle")]
    CyclicQuiver,
    #[error("underlying graph is not a Dynkin (ADE) diagram")]
    NotDynkin,
    #[error("vertex {0} is not a sink")]
    NotASink(u32),
    #[error("vertex {0} is not a source")]
    NotASource(u32),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("expected a vector of length {expected}, got {got}")]
    IndexMismatch { expected: usize, got: usize },
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("representations live over different quivers")]
    QuiverMismatch,
    #[error("sequence is not a filtration: {0}")]
    NotAFiltration(String),
    #[error("filtration does not end at the representation's dimension vector")]
    FiltrationTopMismatch,
    #[error("dimension vector is not a positive root")]
    NotARoot,
    #[error("dimension vectors of the classes do not add up")]
    DimensionMismatch,
    #[error("subspace dimension {r} out of range for ambient dimension {n}")]
    SubspaceDimOutOfRange { r: i64, n: i64 },
    #[error("ordering is not admissible for the quiver")]
    NotAdmissible,
    #[error("held-out prime check failed at p={prime}: expected {expected}, interpolant gives {got}")]
    HeldOutMismatch {
        prime: u64,
        expected: String,
        got: String,
    },
    #[error("reflection iteration exceeded the termination bound (input not preprojective?)")]
    TerminationExceeded,
    #[error("point is not a flag of the representation")]
    NotAFlagPoint,
    #[error("fiber formula hypothesis violated: e + reverse(r) must be weakly increasing and nonnegative")]
    FiberHypothesis,
    #[error("invalid input: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
