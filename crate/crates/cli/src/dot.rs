use std::collections::BTreeSet;
use std::fmt::Write;

use ramsey_trees::{FinTree, Node};

#[derive(Clone, Debug, Default)]
pub struct DotOptions {
    /// Drawn darkened, to pick out a subtree.
    pub selected: BTreeSet<Node>,
    /// Print bit strings next to nodes.
    pub labels: bool,
}

fn parent<'a>(t: &'a FinTree, x: &Node) -> Option<&'a Node> {
    t.nodes()
        .range(..x.clone())
        .rev()
        .filter(|p| p.is_proper_prefix_of(x))
        .max_by_key(|p| p.len())
}

/// Graphviz text for `t`: edges join each node to its longest proper prefix
/// in `t`, nodes of one length share a rank, coding nodes are filled black
/// and selected nodes gray.
pub fn emit_dot(t: &FinTree, opts: &DotOptions) -> String {
    let mut out = String::from("digraph tree {\n");
    if t.is_empty() {
        out.push_str("}\n");
        return out;
    }
    out.push_str("  rankdir=BT;\n  node [shape=circle, width=0.15, fixedsize=true, label=\"\"];\n  edge [arrowhead=none];\n");
    let coding: BTreeSet<&Node> = t.coding_nodes().iter().collect();
    for x in t.nodes() {
        let mut attrs = vec![format!("tooltip=\"{x}\"")];
        if opts.labels {
            attrs.push(format!("xlabel=\"{x}\""));
        }
        if coding.contains(x) {
            attrs.push("style=filled, fillcolor=black".into());
        } else if opts.selected.contains(x) {
            attrs.push("style=filled, fillcolor=gray45".into());
        }
        let _ = writeln!(out, "  \"{x}\" [{}];", attrs.join(", "));
    }
    for l in t.levels() {
        let names: Vec<String> = t.level(l).iter().map(|x| format!("\"{x}\"")).collect();
        let _ = writeln!(out, "  {{ rank=same; {} }}", names.join("; "));
    }
    for x in t.nodes() {
        if let Some(p) = parent(t, x) {
            let _ = writeln!(out, "  \"{p}\" -> \"{x}\";");
        }
    }
    out.push_str("}\n");
    out
}
