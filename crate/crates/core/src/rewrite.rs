//! Twisted Rota-Baxter rewriting and the reduction to operator-linear form.
//!
//! A branching point with branches `(α, f…)` and `(β, g…)` under a vertex
//! labeled `x` is replaced by two trees:
//!
//! ```text
//!   x                 τ_β x                      τ_α x
//!  α β        =>       α            +             β
//! f   g             τ_β⁻¹ f                    τ_α⁻¹ g
//!                   (f's children,             (g's children,
//!                    plus β → g)                plus α → f)
//! ```
//!
//! Every other branch and the rest of the tree are carried over unchanged.
//! Repeating this at a branching point of maximum height always terminates:
//! each output keeps the edge count and strictly lowers `(N, D)`
//! lexicographically.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::RewriteError;
use crate::forest::Forest;
use crate::label::{KernelIndex, Label};
use crate::tree::{Branch, Metrics, Tree, VertexPath};

/// A branching point together with the two child positions to rewrite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redex {
    pub vertex: VertexPath,
    pub i: usize,
    pub j: usize,
}

/// One application of the rewrite inside a reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    /// Derivation id of the rewritten tree. Input trees are numbered in
    /// canonical order from 0; each step numbers its fresh outputs next.
    pub tree_id: usize,
    pub tree_before: Tree,
    pub redex: Redex,
    pub outputs: (Tree, Tree),
    pub metrics_before: Metrics,
    pub metrics_after: (Metrics, Metrics),
}

impl RewriteStep {
    /// Checks edge conservation and the `(N, D)` descent of both outputs.
    pub fn check_invariants(&self) -> Result<(), RewriteError> {
        let before = self.metrics_before;
        for after in [self.metrics_after.0, self.metrics_after.1] {
            if after.edges != before.edges {
                return Err(RewriteError::InvariantViolation(format!(
                    "edge count changed from {} to {}",
                    before.edges, after.edges
                )));
            }
            let dropped_branch = after.terminal_branches + 1 == before.terminal_branches;
            let shortened = after.terminal_branches == before.terminal_branches
                && after.terminal_length + 1 == before.terminal_length;
            if !(dropped_branch || shortened) {
                return Err(RewriteError::InvariantViolation(format!(
                    "no (N, D) descent: before N={} D={}, after N={} D={}",
                    before.terminal_branches,
                    before.terminal_length,
                    after.terminal_branches,
                    after.terminal_length
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteTrace {
    pub input: Forest,
    pub output: Forest,
    pub steps: Vec<RewriteStep>,
}

impl RewriteTrace {
    /// Re-applies every recorded step to `input` and returns the resulting
    /// forest, failing if any recorded step does not reproduce.
    pub fn replay(&self) -> Result<Forest, RewriteError> {
        let mut forest = self.input.clone();
        for (k, step) in self.steps.iter().enumerate() {
            let coeff = forest.remove(&step.tree_before).ok_or_else(|| {
                RewriteError::InvariantViolation(format!(
                    "replay step {}: tree not in forest",
                    k + 1
                ))
            })?;
            let outputs = rb_step(
                &step.tree_before,
                &step.redex.vertex,
                step.redex.i,
                step.redex.j,
            )?;
            if outputs != step.outputs {
                return Err(RewriteError::InvariantViolation(format!(
                    "replay step {}: outputs differ",
                    k + 1
                )));
            }
            forest.add_term(outputs.0, coeff);
            forest.add_term(outputs.1, coeff);
        }
        Ok(forest)
    }
}

// T' with branch j moved onto the head of branch i.
fn fold_pair(x: &Tree, i: usize, j: usize) -> Tree {
    let children = x.children();
    let target = &children[i];
    let moved = &children[j];

    let mut target_children = target.tree.children().to_vec();
    target_children.push(moved.clone());
    let new_head = Tree::new(
        target.tree.label().twisted_inv(&moved.kernel),
        target_children,
    );

    let new_children = children
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != j)
        .map(|(k, b)| {
            if k == i {
                Branch::new(target.kernel.clone(), new_head.clone())
            } else {
                b.clone()
            }
        })
        .collect();
    Tree::new(x.label().twisted(&moved.kernel), new_children)
}

/// Applies the twisted Rota-Baxter identity to branches `i` and `j` of the
/// vertex at `vertex`. Both outputs are canonical.
pub fn rb_step(
    t: &Tree,
    vertex: &[usize],
    i: usize,
    j: usize,
) -> Result<(Tree, Tree), RewriteError> {
    let x = t
        .subtree(vertex)
        .ok_or_else(|| RewriteError::InvalidPath(vertex.to_vec()))?;
    let n = x.children().len();
    if n < 2 {
        return Err(RewriteError::NotBranchingPoint {
            path: vertex.to_vec(),
            children: n,
        });
    }
    if i == j || i >= n || j >= n {
        return Err(RewriteError::InvalidPair { i, j, children: n });
    }
    let first = t
        .replace_at(vertex, fold_pair(x, i, j))
        .expect("path checked above");
    let second = t
        .replace_at(vertex, fold_pair(x, j, i))
        .expect("path checked above");
    Ok((first.canonicalize(), second.canonicalize()))
}

/// Picks the branching point of maximum height (smallest path on ties) and
/// its first two branches. Returns `None` for branch-free trees.
///
/// All branches above a deepest branching point are chains, so the selected
/// pair is always a pair of terminal branches.
pub fn select_redex(t: &Tree) -> Option<Redex> {
    let mut best: Option<VertexPath> = None;
    for path in t.branching_points() {
        let better = match &best {
            None => true,
            Some(b) => path.len() > b.len() || (path.len() == b.len() && path < *b),
        };
        if better {
            best = Some(path);
        }
    }
    best.map(|vertex| Redex { vertex, i: 0, j: 1 })
}

/// Upper bound on the number of steps a reduction of `f` may take.
///
/// A tree with `E` edges yields at most `E!` chains, one per ordering of its
/// edges compatible with the tree, so it needs fewer than `E!` steps.
pub fn step_ceiling(f: &Forest) -> u64 {
    f.trees()
        .map(|t| {
            let e = t.edge_count() as u32;
            let pow = 4u64.checked_pow(e).unwrap_or(u64::MAX);
            let fact = (1..=e as u64)
                .try_fold(1u64, |acc, k| acc.checked_mul(k))
                .unwrap_or(u64::MAX);
            pow.max(fact)
        })
        .fold(0u64, u64::saturating_add)
}

struct Engine {
    pending: BTreeMap<Tree, (i64, usize)>,
    done: Forest,
    next_id: usize,
    steps: Vec<RewriteStep>,
    step_count: u64,
    ceiling: u64,
    record: bool,
}

impl Engine {
    fn new(input: &Forest, record: bool) -> Result<Self, RewriteError> {
        let mut engine = Engine {
            pending: BTreeMap::new(),
            done: Forest::new(),
            next_id: 0,
            steps: Vec::new(),
            step_count: 0,
            ceiling: step_ceiling(input),
            record,
        };
        for (tree, coeff) in input.iter() {
            let id = engine.next_id;
            engine.next_id += 1;
            if tree.is_branch_free() {
                engine.done.add_term(tree.clone(), coeff);
            } else {
                engine.pending.insert(tree.clone(), (coeff, id));
            }
        }
        Ok(engine)
    }

    fn push(&mut self, tree: Tree, coeff: i64) -> Result<(), RewriteError> {
        let overflow = || RewriteError::InvariantViolation("coefficient overflow".into());
        if tree.is_branch_free() {
            return self.done.try_add_term(tree, coeff).map_err(|_| overflow());
        }
        match self.pending.get_mut(&tree) {
            Some((c, _)) => {
                *c = c.checked_add(coeff).ok_or_else(overflow)?;
                if *c == 0 {
                    self.pending.remove(&tree);
                }
            }
            None => {
                self.pending.insert(tree, (coeff, self.next_id));
                self.next_id += 1;
            }
        }
        Ok(())
    }

    fn run(mut self) -> Result<(Forest, Vec<RewriteStep>), RewriteError> {
        while let Some((tree, (coeff, tree_id))) = self.pending.pop_first() {
            self.step_count += 1;
            if self.step_count > self.ceiling {
                return Err(RewriteError::InvariantViolation(format!(
                    "reduction exceeded the step ceiling of {}",
                    self.ceiling
                )));
            }
            let redex = select_redex(&tree).ok_or_else(|| {
                RewriteError::InvariantViolation("pending tree has no branching point".into())
            })?;
            let outputs = rb_step(&tree, &redex.vertex, redex.i, redex.j)?;
            let step = RewriteStep {
                tree_id,
                metrics_before: tree.metrics(),
                metrics_after: (outputs.0.metrics(), outputs.1.metrics()),
                tree_before: tree,
                redex,
                outputs,
            };
            step.check_invariants()?;
            self.push(step.outputs.0.clone(), coeff)?;
            self.push(step.outputs.1.clone(), coeff)?;
            if self.record {
                self.steps.push(step);
            }
        }
        Ok((self.done, self.steps))
    }
}

/// Runs the reduction to a branch-free forest, recording every step.
///
/// Trees are processed in canonical order; equal trees produced along the
/// way are merged by adding coefficients.
pub fn reduce(f: &Forest) -> Result<(Forest, RewriteTrace), RewriteError> {
    let (output, steps) = Engine::new(f, true)?.run()?;
    let trace = RewriteTrace {
        input: f.clone(),
        output: output.clone(),
        steps,
    };
    Ok((output, trace))
}

/// Reduces each tree of `f` independently on the rayon pool and sums the
/// results in canonical order. Produces the same forest as [`reduce`].
pub fn reduce_parallel(f: &Forest) -> Result<Forest, RewriteError> {
    let terms: Vec<(&Tree, i64)> = f.iter().collect();
    let parts: Vec<Forest> = terms
        .par_iter()
        .map(|&(t, c)| {
            let single = Forest::from_tree(t.clone());
            Engine::new(&single, false)?
                .run()
                .map(|(out, _)| out.scale(c))
        })
        .collect::<Result<_, _>>()?;
    Ok(parts.iter().fold(Forest::new(), |acc, p| acc.add(p)))
}

/// Left-hand side of the iterated product rule:
/// `a · P_α(f) · P_β₁(g₁ P_β₂(g₂ ⋯ P_βm(g_m)))`.
pub fn iterated_input(
    a: &Label,
    alpha: &KernelIndex,
    f: &Tree,
    g_chain: &[(KernelIndex, Label)],
) -> Option<Tree> {
    let ((beta1, g1), rest) = g_chain.split_first()?;
    let g_tree = Tree::chain(g1.clone(), rest.iter().cloned());
    Some(
        Tree::new(
            a.clone(),
            vec![
                Branch::new(alpha.clone(), f.clone()),
                Branch::new(beta1.clone(), g_tree),
            ],
        )
        .canonicalize(),
    )
}

/// Closed form for a single integral times an m-fold iterated integral.
///
/// Returns the `m + 1` chains equal to
/// `a · P_α(f) · P_β₁(g₁ P_β₂(g₂ ⋯ P_βm(g_m)))`, without running the
/// general reduction. `f_branch` must be a single vertex.
pub fn iterated_rule(
    a: &Label,
    f_branch: (&KernelIndex, &Tree),
    g_chain: &[(KernelIndex, Label)],
) -> Result<Forest, RewriteError> {
    let (alpha, f_tree) = f_branch;
    if !f_tree.is_leaf() {
        return Err(RewriteError::NotSingleVertex);
    }
    let m = g_chain.len();
    if m == 0 {
        return Err(RewriteError::InvalidArity);
    }
    let f = f_tree.label();
    let beta = |k: usize| &g_chain[k].0;
    let g = |k: usize| &g_chain[k].1;
    let mut out = Forest::new();

    // f integrated first, under the whole g chain
    let mut links = vec![(beta(0).clone(), g(0).clone())];
    links.extend(g_chain[1..].iter().cloned());
    let head = Tree::chain(
        a.twisted(beta(0)),
        std::iter::once((alpha.clone(), f.twisted_inv(beta(0)))).chain(links),
    );
    out.add_term(head, 1);

    // f spliced in just above g_i, for i = 1..m-1 (0-based k = i - 1)
    for k in 0..m - 1 {
        let mut links = Vec::with_capacity(m + 1);
        for p in 0..k {
            links.push((beta(p).clone(), g(p).clone()));
        }
        links.push((
            beta(k).clone(),
            g(k).twisted_inv(alpha).twisted(beta(k + 1)),
        ));
        links.push((alpha.clone(), f.twisted_inv(beta(k + 1))));
        for p in k + 1..m {
            links.push((beta(p).clone(), g(p).clone()));
        }
        out.add_term(Tree::chain(a.twisted(alpha), links), 1);
    }

    // f on top of the whole chain
    let mut links: Vec<(KernelIndex, Label)> = g_chain[..m - 1].to_vec();
    links.push((beta(m - 1).clone(), g(m - 1).twisted_inv(alpha)));
    links.push((alpha.clone(), f.clone()));
    out.add_term(Tree::chain(a.twisted(alpha), links), 1);

    Ok(out)
}
