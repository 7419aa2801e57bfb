//! Graphviz renderings of the poset and of the transition graph.

use std::fmt::Write as _;

use crate::arm::TransitionGraph;
use crate::pip::Pip;
use crate::Instance;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram: solid arrows from each element up to its covers, dashed
/// lines joining the minimal conflicting pairs.
pub fn hasse_dot(pip: &Pip) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..pip.element_count() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(pip.label(i)));
    }
    for (lo, hi) in pip.cover_pairs() {
        let _ = writeln!(out, "  n{lo} -> n{hi};");
    }
    for (i, j) in pip.minimal_inconsistent_pairs() {
        let _ = writeln!(out, "  n{i} -> n{j} [style=dashed, dir=none];");
    }
    out.push_str("}\n");
    out
}

/// The transition graph with configurations as nodes and moves as edge
/// labels (each edge is listed once, labeled by its raising direction).
pub fn transition_dot(inst: &Instance, tg: &TransitionGraph) -> String {
    let g = &inst.graph;
    let mut out = String::from("graph transitions {\n  node [shape=box];\n");
    for (i, x) in tg.nodes.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(&x.display(g)));
    }
    for (a, b, m) in &tg.edges {
        let _ = writeln!(
            out,
            "  n{a} -- n{b} [label=\"{}\"];",
            escape(&m.display(g))
        );
    }
    out.push_str("}\n");
    out
}
