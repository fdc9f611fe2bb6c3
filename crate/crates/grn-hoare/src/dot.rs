//! Deterministic DOT rendering of the asynchronous state graph.

use std::fmt::Write;

use crate::model::{Network, State, Valuation};

fn node_id(state: &State) -> String {
    let parts: Vec<String> = state.0.iter().map(|l| l.to_string()).collect();
    format!("s_{}", parts.join("_"))
}

fn node_label(state: &State) -> String {
    let parts: Vec<String> = state.0.iter().map(|l| l.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Render the full state graph. Stable states are drawn with doubled
/// borders and keep their self-loop. Output is byte-deterministic: states
/// in enumeration order, successors in variable declaration order.
pub fn state_graph_dot(net: &Network, valuation: &Valuation) -> String {
    let mut out = String::new();
    out.push_str("digraph states {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=ellipse];\n");
    let states = net.enumerate_states();
    for state in &states {
        let stable = net.is_stable(valuation, state);
        let _ = writeln!(
            out,
            "  {} [label=\"{}\"{}];",
            node_id(state),
            node_label(state),
            if stable { ", peripheries=2" } else { "" }
        );
    }
    for state in &states {
        for succ in net.successors(valuation, state) {
            let _ = writeln!(out, "  {} -> {};", node_id(state), node_id(&succ));
        }
    }
    out.push_str("}\n");
    out
}
