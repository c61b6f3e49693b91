use crate::graph::GraphError;

/// Failures reported by the generator, the kernels and the oracles.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KernelError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid parameters: {0}")]
    InvalidParams(&'static str),
    #[error("extract from an empty frontier queue")]
    EmptyQueue,
    #[error("vector has length {actual}, graph has {expected} vertices")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("iterate {iteration} has zero L1 norm")]
    ZeroVector { iteration: usize },
    #[error("uniform integer requested over an empty range")]
    ZeroRange,
    #[error("probability {0} outside [0, 1]")]
    DomainError(f64),
    #[error("graph with {n} vertices exceeds the oracle limit of {limit}")]
    SizeGuard { n: usize, limit: usize },
}
