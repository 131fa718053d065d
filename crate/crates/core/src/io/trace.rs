//! Line-oriented trace records, one per rewrite step:
//!
//! ```text
//! step=<k> tree=<n> vertex=<p1.p2...> pair=<i>,<j> E=<e> N_before=<n0> D_before=<d0> N_after=<n1a>,<n1b> D_after=<d1a>,<d1b>
//! ```
//!
//! Steps count from 1; vertex paths and pair positions are 0-based child
//! positions in the canonical tree, and the root's path is empty.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::rewrite::{RewriteStep, RewriteTrace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub step: usize,
    pub tree: usize,
    pub vertex: Vec<usize>,
    pub pair: (usize, usize),
    pub edges: usize,
    pub n_before: usize,
    pub d_before: usize,
    pub n_after: (usize, usize),
    pub d_after: (usize, usize),
}

impl TraceRecord {
    pub fn from_step(step_number: usize, step: &RewriteStep) -> Self {
        Self {
            step: step_number,
            tree: step.tree_id,
            vertex: step.redex.vertex.clone(),
            pair: (step.redex.i, step.redex.j),
            edges: step.metrics_before.edges,
            n_before: step.metrics_before.terminal_branches,
            d_before: step.metrics_before.terminal_length,
            n_after: (
                step.metrics_after.0.terminal_branches,
                step.metrics_after.1.terminal_branches,
            ),
            d_after: (
                step.metrics_after.0.terminal_length,
                step.metrics_after.1.terminal_length,
            ),
        }
    }
}

impl fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vertex: Vec<String> = self.vertex.iter().map(usize::to_string).collect();
        write!(
            f,
            "step={} tree={} vertex={} pair={},{} E={} N_before={} D_before={} N_after={},{} D_after={},{}",
            self.step,
            self.tree,
            vertex.join("."),
            self.pair.0,
            self.pair.1,
            self.edges,
            self.n_before,
            self.d_before,
            self.n_after.0,
            self.n_after.1,
            self.d_after.0,
            self.d_after.1
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed trace record field {field:?}")]
pub struct TraceParseError {
    pub field: &'static str,
}

const FIELDS: [&str; 9] = [
    "step", "tree", "vertex", "pair", "E", "N_before", "D_before", "N_after", "D_after",
];

impl FromStr for TraceRecord {
    type Err = TraceParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(' ').collect();
        if parts.len() != FIELDS.len() {
            return Err(TraceParseError { field: "record" });
        }
        let mut values = [""; 9];
        for ((value, part), key) in values.iter_mut().zip(&parts).zip(FIELDS) {
            *value = part
                .strip_prefix(key)
                .and_then(|r| r.strip_prefix('='))
                .ok_or(TraceParseError { field: key })?;
        }
        let num = |i: usize| {
            values[i]
                .parse::<usize>()
                .map_err(|_| TraceParseError { field: FIELDS[i] })
        };
        let pair = |i: usize| {
            let (a, b) = values[i]
                .split_once(',')
                .ok_or(TraceParseError { field: FIELDS[i] })?;
            let err = |_| TraceParseError { field: FIELDS[i] };
            Ok::<_, TraceParseError>((a.parse().map_err(err)?, b.parse().map_err(err)?))
        };
        let vertex = if values[2].is_empty() {
            Vec::new()
        } else {
            values[2]
                .split('.')
                .map(|p| p.parse().map_err(|_| TraceParseError { field: "vertex" }))
                .collect::<Result<_, _>>()?
        };
        Ok(TraceRecord {
            step: num(0)?,
            tree: num(1)?,
            vertex,
            pair: pair(3)?,
            edges: num(4)?,
            n_before: num(5)?,
            d_before: num(6)?,
            n_after: pair(7)?,
            d_after: pair(8)?,
        })
    }
}

/// All records of a trace, one per line, each terminated by a newline.
pub fn format_trace(trace: &RewriteTrace) -> String {
    trace
        .steps
        .iter()
        .enumerate()
        .map(|(k, step)| format!("{}\n", TraceRecord::from_step(k + 1, step)))
        .collect()
}
