//! Vertex-edge decorated rooted trees.
//!
//! A [`Tree`] encodes one integral monomial: the root label multiplies the
//! product of the integrals contributed by each child branch, where a branch
//! `(ω, U)` stands for `P_ω(U)`. Sibling branches commute, so the canonical
//! form sorts them.

use std::cmp::Ordering;

use crate::label::{KernelIndex, Label};

/// An edge decorated by a kernel index together with the subtree it leads to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Branch {
    pub kernel: KernelIndex,
    pub tree: Tree,
}

impl Branch {
    pub fn new(kernel: KernelIndex, tree: Tree) -> Self {
        Self { kernel, tree }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tree {
    label: Label,
    children: Vec<Branch>,
}

/// Path from the root to a vertex, as child positions.
pub type VertexPath = Vec<usize>;

/// The E / N / D measures of a tree: edges, terminal branches, and total
/// terminal branch length.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Metrics {
    pub edges: usize,
    pub terminal_branches: usize,
    pub terminal_length: usize,
}

/// A chain from a branching point (or from the root of a branch-free tree)
/// down to a leaf with no branching point strictly in between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminalBranch {
    pub start: VertexPath,
    pub leaf: VertexPath,
}

impl TerminalBranch {
    pub fn len(&self) -> usize {
        self.leaf.len() - self.start.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Tree {
    pub fn new(label: Label, children: Vec<Branch>) -> Self {
        Self { label, children }
    }

    pub fn leaf(label: Label) -> Self {
        Self::new(label, Vec::new())
    }

    /// The single vertex labeled 1, the unit of [`Tree::graft`].
    pub fn one() -> Self {
        Self::leaf(Label::one())
    }

    /// Builds `root –ω₁– l₁ –ω₂– l₂ ...` from the bottom up.
    pub fn chain(root: Label, links: impl IntoIterator<Item = (KernelIndex, Label)>) -> Self {
        let links: Vec<_> = links.into_iter().collect();
        let mut labels = Vec::with_capacity(links.len() + 1);
        labels.push(root);
        let mut kernels = Vec::with_capacity(links.len());
        for (k, l) in links {
            kernels.push(k);
            labels.push(l);
        }
        let mut tree = Tree::leaf(labels.pop().expect("chain has a root"));
        while let Some(label) = labels.pop() {
            let kernel = kernels.pop().expect("one kernel per link");
            tree = Tree::new(label, vec![Branch::new(kernel, tree)]);
        }
        tree
    }

    pub fn label(&self) -> &Label {
        &self.label
    }

    pub fn children(&self) -> &[Branch] {
        &self.children
    }

    pub fn into_parts(self) -> (Label, Vec<Branch>) {
        (self.label, self.children)
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn canonicalize(&self) -> Tree {
        let mut children: Vec<Branch> = self
            .children
            .iter()
            .map(|b| Branch::new(b.kernel.clone(), b.tree.canonicalize()))
            .collect();
        children.sort();
        Tree::new(self.label.clone(), children)
    }

    pub fn is_canonical(&self) -> bool {
        self.children.windows(2).all(|w| w[0] <= w[1])
            && self.children.iter().all(|b| b.tree.is_canonical())
    }

    /// Grafting product: merge the two roots, multiplying their labels.
    pub fn graft(&self, other: &Tree) -> Tree {
        let children = self
            .children
            .iter()
            .chain(&other.children)
            .cloned()
            .collect();
        Tree::new(self.label.mul(&other.label), children).canonicalize()
    }

    /// Extension operator: a new root labeled 1 joined to this root by `omega`.
    pub fn extend(&self, omega: KernelIndex) -> Tree {
        Tree::new(Label::one(), vec![Branch::new(omega, self.clone())])
    }

    pub fn edge_count(&self) -> usize {
        self.children.iter().map(|b| 1 + b.tree.edge_count()).sum()
    }

    pub fn vertex_count(&self) -> usize {
        self.edge_count() + 1
    }

    pub fn height(&self) -> usize {
        self.children
            .iter()
            .map(|b| 1 + b.tree.height())
            .max()
            .unwrap_or(0)
    }

    pub fn subtree(&self, path: &[usize]) -> Option<&Tree> {
        let mut node = self;
        for &i in path {
            node = &node.children.get(i)?.tree;
        }
        Some(node)
    }

    /// Returns a copy of `self` with the vertex at `path` replaced by `replacement`.
    pub fn replace_at(&self, path: &[usize], replacement: Tree) -> Option<Tree> {
        match path.split_first() {
            None => Some(replacement),
            Some((&i, rest)) => {
                let branch = self.children.get(i)?;
                let new_child = branch.tree.replace_at(rest, replacement)?;
                let mut children = self.children.clone();
                children[i] = Branch::new(branch.kernel.clone(), new_child);
                Some(Tree::new(self.label.clone(), children))
            }
        }
    }

    /// Paths of all vertices with two or more children, in preorder.
    pub fn branching_points(&self) -> Vec<VertexPath> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_branching(&mut path, &mut out);
        out
    }

    fn collect_branching(&self, path: &mut VertexPath, out: &mut Vec<VertexPath>) {
        if self.children.len() >= 2 {
            out.push(path.clone());
        }
        for (i, b) in self.children.iter().enumerate() {
            path.push(i);
            b.tree.collect_branching(path, out);
            path.pop();
        }
    }

    pub fn is_branch_free(&self) -> bool {
        self.children.len() <= 1 && self.children.iter().all(|b| b.tree.is_branch_free())
    }

    pub fn terminal_branches(&self) -> Vec<TerminalBranch> {
        let mut out = Vec::new();
        if !self.is_leaf() {
            let mut path = Vec::new();
            self.collect_terminal(&[], &mut path, &mut out);
        }
        out
    }

    fn collect_terminal(
        &self,
        start: &[usize],
        path: &mut VertexPath,
        out: &mut Vec<TerminalBranch>,
    ) {
        if self.is_leaf() {
            out.push(TerminalBranch {
                start: start.to_vec(),
                leaf: path.clone(),
            });
            return;
        }
        let own_start;
        let start = if self.children.len() >= 2 {
            own_start = path.clone();
            own_start.as_slice()
        } else {
            start
        };
        for (i, b) in self.children.iter().enumerate() {
            path.push(i);
            b.tree.collect_terminal(start, path, out);
            path.pop();
        }
    }

    pub fn metrics(&self) -> Metrics {
        let branches = self.terminal_branches();
        Metrics {
            edges: self.edge_count(),
            terminal_branches: branches.len(),
            terminal_length: branches.iter().map(TerminalBranch::len).sum(),
        }
    }
}

impl Ord for Tree {
    /// Branches first, then the root label.
    fn cmp(&self, other: &Self) -> Ordering {
        self.children
            .cmp(&other.children)
            .then_with(|| self.label.cmp(&other.label))
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
