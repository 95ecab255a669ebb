use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which precondition of a regular conference matrix failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConferenceDefect {
    NotSquare,
    NotSymmetric,
    NonzeroDiagonal,
    BadEntry,
    NotConference,
    RowSumsNotConstant,
    OrderMismatch,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("incompatible towers: {0} and {1} have no common refinement")]
    IncompatibleTower(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicand {0} does not embed as a non-negative real")]
    NegativeRadicand(String),
    #[error("value is not real")]
    NotReal,
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),
    #[error("not strongly regular: vertices {u} and {v}: {reason}")]
    NotStronglyRegular { u: usize, v: usize, reason: String },
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("graph has diameter {0:?}, expected 3")]
    WrongDiameter(Option<usize>),
    #[error("not antipodal: {0}")]
    NotAntipodal(String),
    #[error("not distance-regular: {0}")]
    NotDistanceRegular(String),
    #[error("strongly regular graph must have more than 4 vertices, got {0}")]
    TooSmall(u64),
    #[error("solution/graph mismatch: {0}")]
    SolutionGraphMismatch(String),
    #[error("not a regular conference matrix: {0:?}")]
    NotRegularConference(ConferenceDefect),
    #[error("zero entry at ({row}, {col})")]
    ZeroEntry { row: usize, col: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
}
