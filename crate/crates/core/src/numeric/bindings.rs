//! Concrete definitions for the function names and kernels of a forest.
//!
//! The text format is line oriented; blank lines and `#` comments are ignored:
//!
//! ```text
//! kernel alpha k=exp(-x) h=exp(t)
//! func f = 1 + x^2
//! ```

use std::collections::BTreeMap;

use thiserror::Error;

use crate::error::EvalError;
use crate::label::{FuncName, KernelIndex};
use crate::numeric::scalar::{ScalarExpr, ScalarParseError};

/// `K_ω(x, t) = k(x) · h(t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelBinding {
    pub k: ScalarExpr,
    pub h: ScalarExpr,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Bindings {
    pub kernels: BTreeMap<KernelIndex, KernelBinding>,
    pub functions: BTreeMap<FuncName, ScalarExpr>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BindingsError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Expr {
        line: usize,
        #[source]
        source: ScalarParseError,
    },
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn kernel(mut self, index: &str, k: &str, h: &str) -> Result<Self, BindingsError> {
        let syntax = |message: String| BindingsError::Syntax { line: 0, message };
        let index = KernelIndex::new(index).map_err(|e| syntax(e.to_string()))?;
        let k = k
            .parse()
            .map_err(|source| BindingsError::Expr { line: 0, source })?;
        let h = h
            .parse()
            .map_err(|source| BindingsError::Expr { line: 0, source })?;
        self.kernels.insert(index, KernelBinding { k, h });
        Ok(self)
    }

    pub fn func(mut self, name: &str, expr: &str) -> Result<Self, BindingsError> {
        let name = FuncName::new(name).map_err(|e| BindingsError::Syntax {
            line: 0,
            message: e.to_string(),
        })?;
        let expr = expr
            .parse()
            .map_err(|source| BindingsError::Expr { line: 0, source })?;
        self.functions.insert(name, expr);
        Ok(self)
    }

    pub fn parse(text: &str) -> Result<Self, BindingsError> {
        let mut out = Bindings::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |message: &str| BindingsError::Syntax {
                line,
                message: message.to_string(),
            };
            let expr = |s: &str| {
                s.trim()
                    .parse::<ScalarExpr>()
                    .map_err(|source| BindingsError::Expr { line, source })
            };
            let (keyword, rest) = content
                .split_once(char::is_whitespace)
                .ok_or_else(|| syntax("expected `kernel` or `func` record"))?;
            let rest = rest.trim_start();
            match keyword {
                "kernel" => {
                    let (index, rest) = rest
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| syntax("expected `kernel <index> k=<expr> h=<expr>`"))?;
                    let index = KernelIndex::new(index).map_err(|e| syntax(&e.to_string()))?;
                    let rest = rest.trim_start();
                    let k_text = rest
                        .strip_prefix("k=")
                        .ok_or_else(|| syntax("expected `k=` after the kernel index"))?;
                    let split = k_text
                        .rmatch_indices("h=")
                        .map(|(i, _)| i)
                        .find(|&i| i > 0 && k_text[..i].ends_with(char::is_whitespace))
                        .ok_or_else(|| syntax("expected ` h=` after the k expression"))?;
                    let k = expr(&k_text[..split])?;
                    let h = expr(&k_text[split + 2..])?;
                    out.kernels.insert(index, KernelBinding { k, h });
                }
                "func" => {
                    let (name, body) = rest
                        .split_once('=')
                        .ok_or_else(|| syntax("expected `func <name> = <expr>`"))?;
                    let name = FuncName::new(name.trim()).map_err(|e| syntax(&e.to_string()))?;
                    out.functions.insert(name, expr(body)?);
                }
                _ => return Err(syntax("expected `kernel` or `func` record")),
            }
        }
        Ok(out)
    }

    pub fn kernel_binding(&self, index: &KernelIndex) -> Result<&KernelBinding, EvalError> {
        self.kernels
            .get(index)
            .ok_or_else(|| EvalError::UnboundKernel(index.to_string()))
    }

    pub fn function(&self, name: &FuncName) -> Result<&ScalarExpr, EvalError> {
        self.functions
            .get(name)
            .ok_or_else(|| EvalError::UnboundFunction(name.to_string()))
    }
}
