use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range (carrier size {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("dual directedness is only defined for non-empty subsets")]
    EmptySubset,

    #[error("not a partial order: {law} fails at {witness:?}")]
    InvalidPoset {
        law: &'static str,
        witness: Vec<usize>,
    },

    #[error(
        "map is not order-preserving: {x} <= {y} but map[{x}] = {fx} is not <= map[{y}] = {fy}"
    )]
    NotMonotone {
        x: usize,
        y: usize,
        fx: usize,
        fy: usize,
    },

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("invalid semilattice: {0}")]
    InvalidSemilattice(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("space is not T0: points {x} and {y} have the same closure")]
    NotT0 { x: usize, y: usize },

    #[error("space is not a verified S-space ({0})")]
    UnverifiedSpace(String),

    #[error("{0} is not a member of {1}")]
    NotInFamily(String, &'static str),

    #[error("relation is not certified: {0}")]
    Uncertified(String),

    #[error("multirelation is not normal: {0}")]
    NotNormal(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} needs {needed} slots, capacity is {capacity}")]
    Capacity {
        what: &'static str,
        needed: usize,
        capacity: usize,
    },

    #[error("sampling budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
