use thiserror::Error;

/// Errors produced by the arrangement pipelines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("operation requires a central arrangement")]
    NotCentral,

    #[error("arrangement is already central")]
    AlreadyCentral,

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("{what}: {size} exceeds the configured cap of {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },

    #[error("search aborted: node budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("arrangement is not hypersolvable ({0})")]
    NotHypersolvable(String),

    #[error("p is infinite: the arrangement is supersolvable and its complement aspherical")]
    Aspherical,

    #[error("matrix entry at ({row}, {col}) is not in the augmentation ideal")]
    NotEpsilonMinimal { row: usize, col: usize },

    #[error("coordinate {0} of the torus point is zero")]
    ZeroCoordinate(usize),

    #[error("point has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("substitution matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),

    #[error("generator symbol {0:?} appears in both factors")]
    SymbolCollision(String),

    #[error("product of entries sharing the free factor {0} is not commutative")]
    NonCommutingProduct(usize),

    #[error("graph contains the triangle {0:?}")]
    TriangleFound([usize; 3]),
}

impl Error {
    /// True for refusals caused by search budgets or work caps rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
