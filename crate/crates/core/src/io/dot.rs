use std::fmt::Write as _;

use crate::forest::Forest;
use crate::tree::Tree;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn write_nodes(t: &Tree, next: &mut usize, out: &mut String) -> usize {
    let id = *next;
    *next += 1;
    let shape = if id == 0 { ", shape=doublecircle" } else { "" };
    writeln!(
        out,
        "  n{id} [label=\"{}\"{shape}];",
        escape(&t.label().to_string())
    )
    .unwrap();
    for b in t.children() {
        let child = write_nodes(&b.tree, next, out);
        writeln!(
            out,
            "  n{id} -> n{child} [label=\"{}\"];",
            escape(b.kernel.as_str())
        )
        .unwrap();
    }
    id
}

/// One `digraph` per tree, in canonical order. Nodes are numbered in
/// preorder; the root is drawn as a double circle and edges point away from it.
pub fn render_dot(f: &Forest) -> String {
    let mut out = String::new();
    for (k, (t, c)) in f.iter().enumerate() {
        writeln!(out, "digraph tree{k} {{").unwrap();
        writeln!(out, "  label=\"coefficient {c}\";").unwrap();
        writeln!(out, "  node [shape=circle];").unwrap();
        let mut next = 0;
        write_nodes(t, &mut next, &mut out);
        out.push_str("}\n");
    }
    out
}
