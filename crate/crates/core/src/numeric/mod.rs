//! Numeric evaluation of forests under concrete separable kernels.

pub mod bindings;
pub mod eval;
pub mod scalar;

pub use bindings::{Bindings, BindingsError, KernelBinding};
pub use eval::{
    compare, eval_forest, eval_label, eval_tree, verify_equivalence, SampleReport, VerifyReport,
};
pub use scalar::{ScalarExpr, ScalarParseError};
