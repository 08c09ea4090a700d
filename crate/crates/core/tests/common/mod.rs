//! Enumeration oracles shared by the integration targets. They rebuild
//! connectivity and vector probabilities from scratch instead of calling the
//! library's solvers.

#![allow(dead_code)]

use relbat::{Labeling, Network};

/// Plain depth-first search from node 1 to node `nodes` over an explicit
/// edge list.
pub fn path_exists(nodes: usize, edges: &[(usize, usize)], directed: bool) -> bool {
    let mut seen = vec![false; nodes + 1];
    let mut stack = vec![1];
    seen[1] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            let next = if a == v {
                Some(b)
            } else if !directed && b == v {
                Some(a)
            } else {
                None
            };
            if let Some(w) = next.filter(|&w| !seen[w]) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen[nodes]
}

/// (value, connected, probability) for every full vector under `lab`.
pub fn enumerate(net: &Network, lab: &Labeling) -> Vec<(u64, bool, f64)> {
    let m = net.arc_count();
    (0..1u64 << m)
        .map(|value| {
            let mut edges = Vec::new();
            let mut prob = 1.0;
            for pos in 0..m {
                let arc = net.arc(lab.arc_at(pos));
                if value >> (m - 1 - pos) & 1 == 1 {
                    edges.push(arc.endpoints());
                    prob *= arc.up_prob;
                } else {
                    prob *= 1.0 - arc.up_prob;
                }
            }
            (value, path_exists(net.node_count(), &edges, false), prob)
        })
        .collect()
}
