//! Graphviz renderings. Lattice nodes show introduced attributes over the
//! introduced objects in parentheses; taxonomy nouns are boxes.

use std::fmt::Write as _;

use conseg_core::{ConceptLattice, Taxonomy};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn lattice_dot(lattice: &ConceptLattice) -> String {
    let ctx = lattice.context();
    let mut out = String::from("digraph lattice {\n  rankdir=TB;\n  node [shape=ellipse];\n");
    for c in 0..lattice.len() {
        let attrs: Vec<&str> =
            lattice.introduced_attributes(c).into_iter().map(|m| ctx.attributes()[m].as_str()).collect();
        let objs: Vec<&str> = lattice.introduced_objects(c).into_iter().map(|g| ctx.objects()[g].as_str()).collect();
        let mut label = format!("C{}", c + 1);
        if !attrs.is_empty() {
            let _ = write!(label, "\n{}", attrs.join(", "));
        }
        if !objs.is_empty() {
            let _ = write!(label, "\n({})", objs.join(", "));
        }
        let _ = writeln!(out, "  c{c} [label={}];", quote(&label));
    }
    for &(child, parent) in lattice.covers() {
        let _ = writeln!(out, "  c{parent} -> c{child};");
    }
    out.push_str("}\n");
    out
}

pub fn taxonomy_dot(t: &Taxonomy) -> String {
    let mut out = String::from("digraph taxonomy {\n  rankdir=TB;\n");
    for node in t.nodes() {
        let shape = if t.nouns().contains(node) && !t.verbs().contains(node) { "box" } else { "ellipse" };
        let _ = writeln!(out, "  {} [shape={shape}];", quote(node));
    }
    for (p, c) in t.edges() {
        let _ = writeln!(out, "  {} -> {};", quote(p), quote(c));
    }
    out.push_str("}\n");
    out
}
