//! Graphviz export, one digraph per dimension layer.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::computads::Computad;
use crate::globular::GlobularSet;
use crate::trees::Tree;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Layer `d` of `g`: nodes are the `(d-1)`-cells, edges the `d`-cells.
/// Layer 0 lists the 0-cells.
pub fn globular_dot(name: &str, g: &GlobularSet) -> String {
    let mut out = String::new();
    let top = g.dim().unwrap_or(0);
    for d in 0..=top {
        writeln!(out, "digraph {} {{", quote(&format!("{name} dim {d}"))).unwrap();
        out.push_str("  rankdir=LR;\n");
        if d == 0 {
            for x in g.cells(0) {
                writeln!(out, "  {};", quote(x)).unwrap();
            }
        } else {
            for x in g.cells(d - 1) {
                writeln!(out, "  {};", quote(x)).unwrap();
            }
            for x in g.cells(d) {
                let (s, t) = (g.src(x).expect("total"), g.tgt(x).expect("total"));
                writeln!(out, "  {} -> {} [label={}];", quote(s), quote(t), quote(x)).unwrap();
            }
        }
        out.push_str("}\n");
    }
    out
}

/// The pasting scheme of `tree`: one node per position, arrows for source
/// and target.
pub fn tree_dot(tree: &Tree) -> String {
    globular_dot(&tree.to_string(), tree.scheme().carrier())
}

/// Layer `d` of a computad: edges are the `d`-generators, drawn between the
/// printed cells of their attaching spheres.
pub fn computad_dot(name: &str, c: &Computad) -> String {
    let mut out = String::new();
    let top = c.dim().unwrap_or(0);
    for d in 0..=top {
        writeln!(out, "digraph {} {{", quote(&format!("{name} dim {d}"))).unwrap();
        out.push_str("  rankdir=LR;\n");
        if d == 0 {
            for x in c.generators_of_dim(0) {
                writeln!(out, "  {};", quote(x)).unwrap();
            }
        } else {
            let mut nodes = BTreeSet::new();
            let mut edges = Vec::new();
            for x in c.generators_of_dim(d) {
                let s = c.attachment(x).expect("positive generators are attached");
                let (a, b) = (s.src.to_string(), s.tgt.to_string());
                nodes.insert(a.clone());
                nodes.insert(b.clone());
                edges.push((a, b, x.to_string()));
            }
            for n in &nodes {
                writeln!(out, "  {};", quote(n)).unwrap();
            }
            for (a, b, x) in edges {
                writeln!(out, "  {} -> {} [label={}];", quote(&a), quote(&b), quote(&x)).unwrap();
            }
        }
        out.push_str("}\n");
    }
    out
}
