use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex index {index} out of range for graph of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("weight of vertex {vertex} is not positive: {value}")]
    NonPositiveWeight { vertex: usize, value: String },
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("graph not connected")]
    NotConnected,
    #[error("graph of order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("vertex subset must be nonempty")]
    EmptySubset,
    #[error("vertex subset must be a proper subset of the vertex set")]
    FullSubset,
    #[error("vertex subsets are not disjoint")]
    NotDisjoint,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid rational {0:?}")]
    BadRational(String),
    #[error("{0} violated")]
    Constraint(String),
    #[error("vertex {vertex} has degree {degree}, expected 2")]
    WrongDegree { vertex: usize, degree: usize },
    #[error("vertex {0} lies on a triangle")]
    OnTriangle(usize),
    #[error("no edge {0}-{1}")]
    MissingEdge(usize, usize),
    #[error("epsilon out of bounds: {0}")]
    EpsilonOutOfBounds(String),
    #[error("{0}")]
    Invalid(String),
}
