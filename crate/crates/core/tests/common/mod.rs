#![allow(dead_code)]

pub mod golden;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use volterra_core::numeric::{eval_label, Bindings};
use volterra_core::{Atom, Branch, Forest, KernelIndex, Label, Tree};

pub const FUNCS: [&str; 4] = ["f", "g", "h", "u"];
pub const KERNELS: [&str; 3] = ["alpha", "beta", "gamma"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn kernel(s: &str) -> KernelIndex {
    KernelIndex::new(s).unwrap()
}

pub fn random_label(rng: &mut impl Rng) -> Label {
    let mut atoms = Vec::new();
    for _ in 0..rng.gen_range(0..=3) {
        let atom = match rng.gen_range(0..4) {
            0 => Atom::twist(KERNELS.choose(rng).unwrap()).unwrap(),
            1 => Atom::twist_inv(KERNELS.choose(rng).unwrap()).unwrap(),
            _ => Atom::func(FUNCS.choose(rng).unwrap()).unwrap(),
        };
        atoms.push(atom);
    }
    Label::from_atoms(atoms)
}

/// A random tree with exactly `edges` edges: every new vertex hangs off a
/// uniformly chosen existing vertex.
pub fn random_tree(rng: &mut impl Rng, edges: usize) -> Tree {
    let mut labels = vec![random_label(rng)];
    let mut parent = vec![usize::MAX];
    let mut kernels = vec![None];
    for v in 1..=edges {
        parent.push(rng.gen_range(0..v));
        labels.push(random_label(rng));
        kernels.push(Some(kernel(KERNELS.choose(rng).unwrap())));
    }
    fn build(
        v: usize,
        parent: &[usize],
        labels: &[Label],
        kernels: &[Option<KernelIndex>],
    ) -> Tree {
        let children = (v + 1..parent.len())
            .filter(|&c| parent[c] == v)
            .map(|c| {
                Branch::new(
                    kernels[c].clone().unwrap(),
                    build(c, parent, labels, kernels),
                )
            })
            .collect();
        Tree::new(labels[v].clone(), children)
    }
    build(0, &parent, &labels, &kernels).canonicalize()
}

pub fn random_forest(rng: &mut impl Rng, max_edges: usize, max_terms: usize) -> Forest {
    let mut f = Forest::new();
    for _ in 0..rng.gen_range(0..=max_terms) {
        let e = rng.gen_range(0..=max_edges);
        let c = *[-3i64, -2, -1, 1, 2, 5].choose(rng).unwrap();
        f.add_term(random_tree(rng, e), c);
    }
    f
}

/// Polynomial or exponential kernels with `k(0) = 1` and polynomial or
/// exponential functions for every name in [`FUNCS`]. Every factor stays
/// above 0.2 on `[0, 1]`.
pub fn random_bindings(rng: &mut impl Rng) -> Bindings {
    random_bindings_with(rng, 40)
}

/// As [`random_bindings`], with every coefficient drawn from
/// `[-spread, spread] / 100`.
pub fn random_bindings_with(rng: &mut impl Rng, spread: i32) -> Bindings {
    let mut c = || (rng.gen_range(-spread..=spread) as f64) / 100.0;
    let mut text = String::new();
    for (i, w) in KERNELS.iter().enumerate() {
        let k = if i % 2 == 0 {
            format!("1 + {} * x + {} * x^2", c(), c())
        } else {
            format!("exp({} * x)", c())
        };
        let h = if i == 1 {
            format!("{} + {} * t^3", 1.0 + c(), c())
        } else {
            format!("exp({} * t) + {}", c(), c())
        };
        text.push_str(&format!("kernel {w} k={k} h={h}\n"));
    }
    for (i, name) in FUNCS.iter().enumerate() {
        let body = match i {
            0 => format!("{} + {} * x", 1.0 + c(), c()),
            1 => format!("exp({} * x)", c()),
            2 => format!("exp({} * x) * (1 + {} * x)", c(), c()),
            _ => format!("1 + {} * x^2 - {} * x^3", c(), c()),
        };
        text.push_str(&format!("func {name} = {body}\n"));
    }
    Bindings::parse(&text).unwrap()
}

fn simpson(n: usize, x: f64, g: impl Fn(f64) -> f64) -> f64 {
    let h = x / n as f64;
    let mut s = g(0.0) + g(x);
    for j in 1..n {
        s += if j % 2 == 1 { 4.0 } else { 2.0 } * g(j as f64 * h);
    }
    s * h / 3.0
}

/// Independent reference: every integral is a fresh composite Simpson rule
/// over `[0, x]`, recursing into the integrand. Cost grows like `(n+1)^depth`.
pub fn naive_eval(t: &Tree, b: &Bindings, x: f64, n: usize) -> f64 {
    let mut v = eval_label(t.label(), b, x).unwrap();
    for br in t.children() {
        let kb = &b.kernels[&br.kernel];
        let inner = simpson(n, x, |s| kb.h.eval(s) * naive_eval(&br.tree, b, s, n));
        v *= kb.k.eval(x) * inner;
    }
    v
}

pub fn naive_eval_forest(f: &Forest, b: &Bindings, x: f64, n: usize) -> f64 {
    f.iter()
        .map(|(t, c)| c as f64 * naive_eval(t, b, x, n))
        .sum()
}

pub fn rel_dev(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}
