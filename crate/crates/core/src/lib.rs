//! Symbolic reduction of separable Volterra integral polynomials.
//!
//! Expressions are integer-weighted forests of rooted trees whose vertices
//! carry function labels and whose edges carry kernel indices. The rewrite
//! engine turns any forest into an equivalent sum of chains, and the numeric
//! module evaluates forests under concrete kernels to cross-check the result.

pub mod error;
pub mod forest;
pub mod io;
pub mod label;
pub mod numeric;
pub mod rewrite;
pub mod tree;

pub use error::{EvalError, IdentError, RewriteError};
pub use forest::{CoefficientOverflow, Forest};
pub use label::{Atom, FuncName, KernelIndex, Label};
pub use rewrite::{
    iterated_input, iterated_rule, rb_step, reduce, reduce_parallel, select_redex, step_ceiling,
    Redex, RewriteStep, RewriteTrace,
};
pub use tree::{Branch, Metrics, TerminalBranch, Tree, VertexPath};
