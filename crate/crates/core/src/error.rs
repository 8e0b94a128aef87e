use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("malformed weight `{0}`")]
    Malformed(String),
    #[error("weight {0} outside (0, 1]")]
    OutOfRange(String),
    #[error("weight {0} has a denominator above 10^9")]
    DenominatorTooLarge(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("self-loop at line {line}")]
    SelfLoop { line: usize },
    #[error("malformed line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("bad weight at line {line}: {source}")]
    Weight { line: usize, source: WeightError },
    #[error("unsupported header `{header}` at line {line}")]
    Header { line: usize, header: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("self-loop on vertex `{vertex}` (arrival {arrival_index})")]
    SelfLoop { vertex: String, arrival_index: usize },
    #[error("arrival indices must be strictly increasing (saw {found} after {previous})")]
    ArrivalOrder { previous: usize, found: usize },
    #[error("instance has no edges")]
    Empty,
}

/// Refusals from the exhaustive solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("exact bin packing refused: {items} items exceeds the limit of {limit}")]
    TooManyItems { items: usize, limit: usize },
    #[error("exact coloring refused: {edges} edges exceeds the limit of {limit}")]
    TooManyEdges { edges: usize, limit: usize },
    #[error("cycle enumeration exceeded its budget of {budget} steps")]
    CycleBudget { budget: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("instance is not a forest")]
    NotForest,
    #[error("instance has parallel edges between `{0}` and `{1}`")]
    NotSimple(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("coloring leaves edges uncolored: {0:?}")]
    Uncolored(Vec<usize>),
    #[error("coloring names arrival indices absent from the instance: {0:?}")]
    UnknownEdges(Vec<usize>),
    #[error("color 0 assigned to arrival {0}; colors start at 1")]
    ZeroColor(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid adversary parameters: {0}")]
pub struct AdversaryError(pub String);

/// Umbrella error for operations that combine several stages.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Adversary(#[from] AdversaryError),
    #[error(transparent)]
    Weight(#[from] WeightError),
}
