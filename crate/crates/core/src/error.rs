use num_rational::BigRational;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// First violated group axiom found while validating a Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupAxiomError {
    #[error("table has {rows} rows but {names} element names")]
    RowCount { rows: usize, names: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RowLength {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({row}, {col}) = {value} is not an element index")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("empty group")]
    Empty,
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("identity must be element 0, found {0:?}")]
    IdentityNotFirst(String),
    #[error("row of {0:?} is not a permutation (left multiplication not invertible)")]
    RowNotPermutation(String),
    #[error("column of {0:?} is not a permutation (right multiplication not invertible)")]
    ColumnNotPermutation(String),
    #[error("associativity fails for ({a}, {b}, {c}): (ab)c = {left}, a(bc) = {right}")]
    NotAssociative {
        a: String,
        b: String,
        c: String,
        left: String,
        right: String,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid group: {0}")]
    InvalidGroup(#[from] GroupAxiomError),
    #[error("unknown group element {0:?}")]
    UnknownElement(String),
    #[error("conjugacy class {0} is not cyclic")]
    NonCyclicClass(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("metric is singular at mu = {0}")]
    SingularMetric(BigRational),
    #[error("linear system is infeasible")]
    Infeasible,
    #[error("candidate eigenvalues account for {found} of {dimension} dimensions")]
    IncompleteSpectrum { found: usize, dimension: usize },
    #[error("spectrum is not symmetric about zero: {0}")]
    AsymmetricSpectrum(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
