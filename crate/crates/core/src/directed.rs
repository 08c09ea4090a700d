//! Directed expansion of an undirected network.
//!
//! Each undirected arc becomes two opposite directed arcs, except that arcs
//! entering the source or leaving the sink can never lie on a simple
//! source-sink path and are dropped.

use crate::graph::{ArcSubset, Network};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectedArc {
    pub tail: usize,
    pub head: usize,
    pub up_prob: f64,
    /// Index of the undirected arc this copy came from.
    pub origin: usize,
}

/// The directed expansion, arcs in ascending `(tail, head)` order.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedNetwork {
    node_count: usize,
    arcs: Vec<DirectedArc>,
    // out[node] = (head, arc index)
    out: Vec<Vec<(usize, usize)>>,
}

impl DirectedNetwork {
    pub fn expand(net: &Network) -> Self {
        let (s, t) = (net.source(), net.sink());
        let mut arcs = Vec::with_capacity(2 * net.arc_count());
        for (origin, arc) in net.arcs().iter().enumerate() {
            for (tail, head) in [(arc.u, arc.v), (arc.v, arc.u)] {
                if head != s && tail != t {
                    arcs.push(DirectedArc {
                        tail,
                        head,
                        up_prob: arc.up_prob,
                        origin,
                    });
                }
            }
        }
        arcs.sort_by_key(|a| (a.tail, a.head));
        let mut out = vec![Vec::new(); net.node_count() + 1];
        for (i, a) in arcs.iter().enumerate() {
            out[a.tail].push((a.head, i));
        }
        DirectedNetwork {
            node_count: net.node_count(),
            arcs,
            out,
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[DirectedArc] {
        &self.arcs
    }

    pub fn find_arc(&self, tail: usize, head: usize) -> Option<usize> {
        self.arcs
            .iter()
            .position(|a| a.tail == tail && a.head == head)
    }

    /// Whether the functioning arcs `up` contain a directed path from node
    /// 1 to node `n`.
    pub fn st_connected(&self, up: &ArcSubset) -> bool {
        let mut seen = vec![false; self.node_count + 1];
        let mut stack = vec![1];
        seen[1] = true;
        while let Some(v) = stack.pop() {
            if v == self.node_count {
                return true;
            }
            for &(w, arc) in &self.out[v] {
                if !seen[w] && up.contains(arc) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }
}

/// Free-function form of [`DirectedNetwork::expand`].
pub fn directed_expansion(net: &Network) -> DirectedNetwork {
    DirectedNetwork::expand(net)
}
