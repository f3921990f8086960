use thiserror::Error;

/// Errors produced by the k-statistic library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order must be at least 1")]
    ZeroOrder,

    #[error("order {order} exceeds the cap of {cap}")]
    OrderAboveCap { order: usize, cap: usize },

    #[error("stirling2({n}, {k}) requires 1 <= k <= n")]
    StirlingOutOfRange { n: usize, k: usize },

    #[error("falling factorial ({n})_{k} requires k <= n")]
    FallingFactorialRange { n: usize, k: usize },

    #[error("partitions are over ground sets of different sizes ({left} vs {right})")]
    GroundSetMismatch { left: usize, right: usize },

    #[error("first partition does not refine the second")]
    NotARefinement,

    #[error("invalid restricted-growth string: {0}")]
    InvalidAssignment(String),

    #[error("index multiset must not be empty")]
    EmptyMultiset,

    #[error("variable index {index} is out of range 1..={n_vars}")]
    InvalidIndex { index: usize, n_vars: usize },

    #[error("sample size N = {n} is smaller than the order k = {k}")]
    InsufficientSampleSize { n: usize, k: usize },

    #[error("dataset must have at least one row")]
    EmptyDataset,

    #[error("dataset must have at least one column")]
    NoColumns,

    #[error("row {row} has {found} values, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },

    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("expected {expected} column names, got {found}")]
    ColumnNameCount { expected: usize, found: usize },

    #[error("batch datasets must share N and n ({0})")]
    HeterogeneousBatch(String),

    #[error("moment for multiset {0:?} is missing from the table")]
    MissingMoment(Vec<usize>),

    #[error("moment table was built for a different multiset")]
    TableMismatch,

    #[error("invalid resampling request: {0}")]
    InvalidResample(String),

    #[error("enumeration of {size} samples exceeds the budget of {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("at least 2 repetitions are required, got {0}")]
    InvalidRepetitions(usize),

    #[error("formula parse error: {0}")]
    FormulaParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
