use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    #[error("duplicate edge {0} -- {1}")]
    DuplicateEdge(String, String),

    #[error("self-loop at `{0}`")]
    SelfLoop(String),

    #[error("edge {0} -- {1} has non-positive weight")]
    NonPositiveWeight(String, String),

    #[error("vertex `{0}` has degree zero")]
    DegreeZero(String),

    #[error("function has no value at `{0}`")]
    UndefinedValue(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("brute-force oracle limited to {limit} vertices, graph has {actual}")]
    TooManyVertices { limit: usize, actual: usize },

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("{0}")]
    Unsupported(String),
}
