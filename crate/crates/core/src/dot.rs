//! Graphviz export of heap forests.
//!
//! Padovan vertices are labelled `key/rank/status` with status `N`, `C`, `P`
//! or `M`, and `root` for roots. Edges to outer children are dashed.
//! Fibonacci vertices are labelled `key/degree` with a trailing `*` when marked.

use std::fmt::Write;

use crate::arena::NodeId;
use crate::fibonacci::{FibState, FibonacciForest};
use crate::padovan::{HeapState, PadovanForest};
use crate::HeapKey;

pub fn padovan_dot<K: HeapKey>(forest: &PadovanForest<K>, h: &HeapState) -> String {
    let store = forest.store();
    let mut out = String::from("digraph padovan {\n  node [shape=box, fontname=\"monospace\"];\n");
    let roots: Vec<NodeId> = forest.roots(h).collect();
    let mut stack: Vec<(NodeId, bool)> = roots.iter().map(|&r| (r, true)).collect();
    stack.reverse();
    while let Some((v, root)) = stack.pop() {
        let status = if root { "root" } else { store.status(v).short_name() };
        let _ = writeln!(
            out,
            "  n{} [label=\"{:?}/{}/{}\"];",
            v.index(),
            store.key(v),
            store.rank(v),
            status
        );
        let children: Vec<_> = store.children(v).collect();
        for &c in &children {
            let style = if store.status(c).is_outer() { " [style=dashed]" } else { "" };
            let _ = writeln!(out, "  n{} -> n{}{};", v.index(), c.index(), style);
        }
        stack.extend(children.into_iter().rev().map(|c| (c, false)));
    }
    if roots.len() > 1 {
        // keep the root list in order from left to right
        let chain: Vec<_> = roots.iter().map(|r| format!("n{}", r.index())).collect();
        let _ = writeln!(out, "  {{ rank=same; {}; }}", chain.join("; "));
    }
    out.push_str("}\n");
    out
}

pub fn fibonacci_dot<K: HeapKey>(forest: &FibonacciForest<K>, h: &FibState) -> String {
    let mut out = String::from("digraph fibonacci {\n  node [shape=ellipse, fontname=\"monospace\"];\n");
    let ring = |start: Option<NodeId>| {
        let mut items = Vec::new();
        if let Some(s) = start {
            let mut x = s;
            loop {
                items.push(x);
                x = forest.node(x).right;
                if x == s {
                    break;
                }
            }
        }
        items
    };
    let mut stack = ring(h.min());
    while let Some(v) = stack.pop() {
        let node = forest.node(v);
        let mark = if node.marked { "*" } else { "" };
        let _ = writeln!(
            out,
            "  n{} [label=\"{:?}/{}{}\"];",
            v.index(),
            node.key,
            node.degree,
            mark
        );
        for c in ring(node.child) {
            let _ = writeln!(out, "  n{} -> n{};", v.index(), c.index());
            stack.push(c);
        }
    }
    out.push_str("}\n");
    out
}
