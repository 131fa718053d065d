use thiserror::Error;

use crate::label::KernelIndex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid identifier {0:?}: expected a letter followed by letters, digits or '_'")]
pub struct IdentError(pub String);

/// Failures of a single twisted Rota-Baxter rewrite or of the reduction loop.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("vertex path {0:?} does not address a vertex of the tree")]
    InvalidPath(Vec<usize>),
    #[error("vertex {path:?} has {children} children; a branching point needs at least 2")]
    NotBranchingPoint { path: Vec<usize>, children: usize },
    #[error("invalid branch pair ({i}, {j}) at a vertex with {children} children")]
    InvalidPair { i: usize, j: usize, children: usize },
    #[error("iterated rule needs a chain of length m >= 1")]
    InvalidArity,
    #[error("iterated rule needs a single-vertex branch opposite the chain")]
    NotSingleVertex,
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

/// Errors raised while evaluating forests numerically.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("no binding for function {0:?}")]
    UnboundFunction(String),
    #[error("no binding for kernel {0:?}")]
    UnboundKernel(String),
    #[error("twist of kernel {kernel} is singular: |k(x)| < 1e-12 at x = {at}")]
    TwistSingularity { kernel: KernelIndex, at: f64 },
    #[error("subinterval count must be even and at least 2, got {0}")]
    BadSubintervals(usize),
}
