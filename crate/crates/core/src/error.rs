use thiserror::Error;

/// Everything that can go wrong while building or checking a structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("mismatched source/target: {0}")]
    Mismatch(String),
    #[error("enumeration bound exceeded: estimated {estimate} items, limit {limit}")]
    BoundExceeded { estimate: u128, limit: u128 },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error(
        "endpoint mismatch: first path ends at {left} (sample {left_at}), second starts at {right} (sample {right_at})"
    )]
    EndpointMismatch { left: String, left_at: usize, right: String, right_at: usize },
    #[error("cut {cut} lies outside piece {piece} = [{lo}, {hi}]")]
    CutOutsidePiece { cut: usize, piece: usize, lo: usize, hi: usize },
    #[error("invalid G-path: {0}")]
    InvalidGPath(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("group of order {order} exceeds the isomorphism search bound {limit}")]
    GroupTooLarge { order: usize, limit: usize },
    #[error("degenerate quotient: {0}")]
    DegenerateQuotient(String),
}

pub type Result<T> = std::result::Result<T, Error>;
