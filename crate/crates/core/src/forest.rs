//! Formal integer-weighted sums of canonical trees.

use std::collections::btree_map::{self, BTreeMap};

use crate::tree::Tree;

/// An integral polynomial: canonical trees with nonzero integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Forest {
    terms: BTreeMap<Tree, i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoefficientOverflow;

impl Forest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_tree(tree: Tree) -> Self {
        let mut f = Self::new();
        f.add_term(tree, 1);
        f
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical tree order.
    pub fn iter(&self) -> impl Iterator<Item = (&Tree, i64)> + '_ {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    pub fn trees(&self) -> impl Iterator<Item = &Tree> + '_ {
        self.terms.keys()
    }

    pub fn coefficient(&self, tree: &Tree) -> i64 {
        self.terms.get(&tree.canonicalize()).copied().unwrap_or(0)
    }

    /// Adds `coeff · tree`.
    ///
    /// # Panics
    /// If the resulting coefficient overflows `i64`.
    pub fn add_term(&mut self, tree: Tree, coeff: i64) {
        self.try_add_term(tree, coeff)
            .expect("forest coefficient overflow");
    }

    pub fn try_add_term(&mut self, tree: Tree, coeff: i64) -> Result<(), CoefficientOverflow> {
        if coeff == 0 {
            return Ok(());
        }
        let tree = if tree.is_canonical() {
            tree
        } else {
            tree.canonicalize()
        };
        match self.terms.entry(tree) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().checked_add(coeff).ok_or(CoefficientOverflow)?;
                if sum == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    /// Removes `tree` entirely, returning its coefficient.
    pub fn remove(&mut self, tree: &Tree) -> Option<i64> {
        self.terms.remove(tree)
    }

    pub fn add(&self, other: &Forest) -> Forest {
        let mut out = self.clone();
        for (t, c) in other.iter() {
            out.add_term(t.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> Forest {
        if c == 0 {
            return Forest::new();
        }
        Forest {
            terms: self
                .terms
                .iter()
                .map(|(t, &k)| {
                    (
                        t.clone(),
                        k.checked_mul(c).expect("forest coefficient overflow"),
                    )
                })
                .collect(),
        }
    }

    pub fn is_branch_free(&self) -> bool {
        self.trees().all(Tree::is_branch_free)
    }

    /// Largest edge count over all trees; 0 for the empty forest.
    pub fn max_edges(&self) -> usize {
        self.trees().map(Tree::edge_count).max().unwrap_or(0)
    }
}

impl FromIterator<(Tree, i64)> for Forest {
    fn from_iter<I: IntoIterator<Item = (Tree, i64)>>(iter: I) -> Self {
        let mut f = Forest::new();
        for (t, c) in iter {
            f.add_term(t, c);
        }
        f
    }
}

impl Extend<(Tree, i64)> for Forest {
    fn extend<I: IntoIterator<Item = (Tree, i64)>>(&mut self, iter: I) {
        for (t, c) in iter {
            self.add_term(t, c);
        }
    }
}
