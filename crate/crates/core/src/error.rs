use thiserror::Error;

/// Errors produced by the library.
///
/// Everything here is an input-contract violation; the mathematical
/// identities themselves are checked by [`crate::verify`] and reported as
/// data, not as errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("vector has length {got}, ambient dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operands live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),

    #[error("operands live over different fields (q = {0} vs q = {1})")]
    FieldMismatch(u64, u64),

    #[error("subspace dimension {k} out of range 0..={max}")]
    SubspaceDimOutOfRange { k: usize, max: usize },

    #[error("partition must be weakly decreasing and positive: {0:?}")]
    InvalidPartition(Vec<usize>),

    #[error("dimension vector must be weakly increasing with entries in 0..={max}: {dims:?}")]
    InvalidDimensionVector { dims: Vec<usize>, max: usize },

    #[error("matrix violates the orbit admissibility conditions")]
    InadmissibleAlpha,

    #[error("matrix is not a valid kappa matrix for the given base flag")]
    InvalidKappa,

    #[error("negative entry at ({i},{j}) while differencing a kappa matrix")]
    NegativeEntry { i: usize, j: usize },

    #[error("doubly indexed flag violates its defining nesting/dimension conditions")]
    InvalidDoublyFlag,

    #[error("flag is not stable under the nilpotent operator")]
    NotStable,

    #[error("flag is not homogeneous for the graded decomposition")]
    NotHomogeneous,

    #[error("estimated flag count {estimate} exceeds the enumeration budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
