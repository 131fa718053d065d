use std::fmt::Write as _;

use crate::forest::Forest;
use crate::label::{Atom, Label};
use crate::tree::Tree;

/// Operator-grammar text of a single tree, e.g. `a * P[alpha](f) * P[beta](g)`.
pub fn tree_to_operator(t: &Tree) -> String {
    let mut out = String::new();
    write_operator(t, &mut out);
    out
}

fn write_operator(t: &Tree, out: &mut String) {
    let mut first = true;
    if !t.label().is_one() {
        write!(out, "{}", t.label()).unwrap();
        first = false;
    }
    for b in t.children() {
        if !first {
            out.push_str(" * ");
        }
        first = false;
        write!(out, "P[{}](", b.kernel).unwrap();
        write_operator(&b.tree, out);
        out.push(')');
    }
    if first {
        out.push('1');
    }
}

fn write_signed_terms(
    f: &Forest,
    out: &mut String,
    mut term: impl FnMut(&Tree, &mut String),
    times: &str,
) {
    if f.is_empty() {
        out.push('0');
        return;
    }
    for (i, (t, c)) in f.iter().enumerate() {
        match (i, c < 0) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if c.unsigned_abs() != 1 {
            write!(out, "{}{}", c.unsigned_abs(), times).unwrap();
        }
        term(t, out);
    }
}

/// Prints a forest in the operator grammar; `parse` reads it back to the
/// same forest. The empty forest prints as `0`.
pub fn print_operator(f: &Forest) -> String {
    let mut out = String::new();
    write_signed_terms(f, &mut out, write_operator, " * ");
    out
}

fn write_label_integral(label: &Label, out: &mut String) {
    for (i, atom) in label.atoms().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        match atom {
            Atom::Twist(w) => write!(out, "τ_{w}").unwrap(),
            Atom::TwistInv(w) => write!(out, "τ_{w}⁻¹").unwrap(),
            Atom::Func(name) => write!(out, "{name}").unwrap(),
        }
    }
}

fn write_integral(t: &Tree, out: &mut String) {
    write_label_integral(t.label(), out);
    let mut empty = t.label().is_one();
    for b in t.children() {
        if !empty {
            out.push(' ');
        }
        empty = false;
        write!(out, "(∫_{} ", b.kernel).unwrap();
        write_integral(&b.tree, out);
        out.push(')');
    }
    if empty {
        out.push('1');
    }
}

/// Human-readable nested-integral notation, e.g.
/// `τ_beta a (∫_alpha τ_beta⁻¹ f (∫_beta g))`. Not meant to be parsed.
pub fn print_integral(f: &Forest) -> String {
    let mut out = String::new();
    write_signed_terms(f, &mut out, write_integral, "·");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse;

    #[test]
    fn reads_off_basic_identity_lhs() {
        let f = parse("P[beta](g) * a * P[alpha](f)").unwrap();
        assert_eq!(print_operator(&f), "a * P[alpha](f) * P[beta](g)");
    }

    #[test]
    fn signs_and_coefficients() {
        let f = parse("-2 * g + f - 1 + 0 * h").unwrap();
        let s = print_operator(&f);
        assert_eq!(parse(&s).unwrap(), f);
        assert_eq!(print_operator(&Forest::new()), "0");
        assert_eq!(print_operator(&parse("-3 * 1").unwrap()), "-3 * 1");
        assert_eq!(print_operator(&parse("P[w](1)").unwrap()), "P[w](1)");
    }

    #[test]
    fn integral_notation() {
        let f = parse("tau[beta]*a * P[alpha](tauinv[beta]*f * P[beta](g)) - 2 * P[w](1)").unwrap();
        assert_eq!(
            print_integral(&f),
            "τ_beta a (∫_alpha τ_beta⁻¹ f (∫_beta g)) - 2·(∫_w 1)"
        );
    }
}
