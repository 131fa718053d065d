//! Nested-quadrature evaluation of trees and forests.
//!
//! A tree is evaluated bottom-up on the uniform grid `t_j = j·x/n`. Each
//! vertex holds its values on the whole grid, so an edge `ω` turns the child
//! values `v` into `k_ω(t_j) · ∫_0^{t_j} h_ω(s) v(s) ds`, with the running
//! integral taken by composite Simpson (plus one 3/8 panel at odd `j`). The
//! root value at `x` therefore uses exact composite Simpson on every level,
//! at a cost linear in the number of edges.

use rayon::prelude::*;

use crate::error::EvalError;
use crate::forest::Forest;
use crate::label::{Atom, Label};
use crate::numeric::bindings::Bindings;
use crate::tree::Tree;

/// Magnitude below which a twist denominator counts as zero.
pub const SINGULAR_EPS: f64 = 1e-12;

fn check_subintervals(n: usize) -> Result<(), EvalError> {
    if n < 2 || !n.is_multiple_of(2) {
        Err(EvalError::BadSubintervals(n))
    } else {
        Ok(())
    }
}

/// Value of a vertex label at `x`.
pub fn eval_label(label: &Label, b: &Bindings, x: f64) -> Result<f64, EvalError> {
    let mut v = 1.0;
    for atom in label.atoms() {
        match atom {
            Atom::Func(name) => v *= b.function(name)?.eval(x),
            Atom::Twist(w) | Atom::TwistInv(w) => {
                let k = &b.kernel_binding(w)?.k;
                let (k0, kx) = (k.eval(0.0), k.eval(x));
                for (at, kv) in [(0.0, k0), (x, kx)] {
                    if kv.is_nan() || kv.abs() < SINGULAR_EPS {
                        return Err(EvalError::TwistSingularity {
                            kernel: w.clone(),
                            at,
                        });
                    }
                }
                v *= if matches!(atom, Atom::Twist(_)) {
                    kx / k0
                } else {
                    k0 / kx
                };
            }
        }
    }
    Ok(v)
}

/// Running integrals `c[j] ≈ ∫_0^{t_j} g` for samples `g` on a uniform grid
/// with even spacing count and step `h`.
fn cumulative(g: &[f64], h: f64) -> Vec<f64> {
    let n = g.len() - 1;
    let mut c = vec![0.0; n + 1];
    let mut simpson = 0.0;
    for j in (2..=n).step_by(2) {
        simpson += h / 3.0 * (g[j - 2] + 4.0 * g[j - 1] + g[j]);
        c[j] = simpson;
    }
    if n >= 1 {
        c[1] = h / 12.0 * (5.0 * g[0] + 8.0 * g[1] - g[2]);
    }
    for j in (3..=n).step_by(2) {
        c[j] = c[j - 3] + 3.0 * h / 8.0 * (g[j - 3] + 3.0 * g[j - 2] + 3.0 * g[j - 1] + g[j]);
    }
    c
}

fn grid_values(t: &Tree, b: &Bindings, grid: &[f64], h: f64) -> Result<Vec<f64>, EvalError> {
    let mut vals = grid
        .iter()
        .map(|&s| eval_label(t.label(), b, s))
        .collect::<Result<Vec<_>, _>>()?;
    for branch in t.children() {
        let kernel = b.kernel_binding(&branch.kernel)?;
        let child = grid_values(&branch.tree, b, grid, h)?;
        let integrand: Vec<f64> = grid
            .iter()
            .zip(&child)
            .map(|(&s, &v)| kernel.h.eval(s) * v)
            .collect();
        let c = cumulative(&integrand, h);
        for (j, &s) in grid.iter().enumerate() {
            vals[j] *= kernel.k.eval(s) * c[j];
        }
    }
    Ok(vals)
}

/// Value of `t` at `x` using `n` Simpson subintervals on every level.
pub fn eval_tree(t: &Tree, b: &Bindings, x: f64, n: usize) -> Result<f64, EvalError> {
    check_subintervals(n)?;
    let h = x / n as f64;
    let grid: Vec<f64> = (0..=n).map(|j| j as f64 * h).collect();
    Ok(grid_values(t, b, &grid, h)?[n])
}

pub fn eval_forest(f: &Forest, b: &Bindings, x: f64, n: usize) -> Result<f64, EvalError> {
    check_subintervals(n)?;
    let terms: Vec<(&Tree, i64)> = f.iter().collect();
    let values = terms
        .par_iter()
        .map(|&(t, c)| eval_tree(t, b, x, n).map(|v| c as f64 * v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(values.into_iter().sum())
}

/// Comparison of two forests at one sample point.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_dev: f64,
    pub rel_dev: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub n: usize,
    pub tol: f64,
    pub samples: Vec<SampleReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.samples.iter().all(|s| s.pass)
    }

    pub fn max_rel_dev(&self) -> f64 {
        self.samples.iter().map(|s| s.rel_dev).fold(0.0, f64::max)
    }
}

/// Compares a pair of values: relative deviation, unless both are below
/// `tol` in magnitude, in which case the absolute deviation decides.
pub fn compare(x: f64, lhs: f64, rhs: f64, tol: f64) -> SampleReport {
    let abs_dev = (lhs - rhs).abs();
    let scale = lhs.abs().max(rhs.abs());
    let rel_dev = if scale > 0.0 { abs_dev / scale } else { 0.0 };
    let pass = if scale < tol {
        abs_dev <= tol
    } else {
        rel_dev <= tol
    };
    SampleReport {
        x,
        lhs,
        rhs,
        abs_dev,
        rel_dev,
        pass,
    }
}

/// Evaluates both forests at every sample and reports the deviations.
pub fn verify_equivalence(
    lhs: &Forest,
    rhs: &Forest,
    b: &Bindings,
    xs: &[f64],
    n: usize,
    tol: f64,
) -> Result<VerifyReport, EvalError> {
    let mut samples = Vec::with_capacity(xs.len());
    for &x in xs {
        let l = eval_forest(lhs, b, x, n)?;
        let r = eval_forest(rhs, b, x, n)?;
        samples.push(compare(x, l, r, tol));
    }
    Ok(VerifyReport { n, tol, samples })
}
