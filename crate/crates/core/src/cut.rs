//! Contracted multigraphs and canonical minimum source-sink cuts.
//!
//! Minimum cuts are found with unit-capacity augmenting paths (each
//! undirected arc carries one unit in either direction). The returned cut
//! is always the one bounding the set of nodes still reachable from the
//! source in the final residual graph. That set is the same for every
//! maximum flow, so the cut does not depend on which augmenting paths were
//! taken.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::graph::{ArcSubset, Network};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CutError {
    #[error("source and sink have been merged into node group {0}")]
    Merged(usize),
}

/// The network after zero or more arc contractions.
///
/// Every original arc is kept. An arc whose endpoints now lie in the same
/// node group is a self-loop and never crosses a cut. Node groups are named
/// by their smallest original node id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    group: Vec<usize>,
    arcs: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn from_network(net: &Network) -> Self {
        Multigraph {
            group: (0..=net.node_count()).collect(),
            arcs: net.arcs().iter().map(|a| a.endpoints()).collect(),
        }
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Group containing original node `node`.
    pub fn group_of(&self, node: usize) -> usize {
        self.group[node]
    }

    /// Current endpoints (group ids) of an arc.
    pub fn endpoints(&self, arc: usize) -> (usize, usize) {
        let (u, v) = self.arcs[arc];
        (self.group[u], self.group[v])
    }

    pub fn is_self_loop(&self, arc: usize) -> bool {
        let (a, b) = self.endpoints(arc);
        a == b
    }

    /// Node groups in ascending order of their id, members ascending.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for node in 1..self.group.len() {
            groups.entry(self.group[node]).or_default().push(node);
        }
        groups.into_values().collect()
    }

    /// Merges the endpoints of `arc`. Parallel arcs and self-loops that
    /// result are kept.
    pub fn contract(&self, arc: usize) -> Multigraph {
        let (a, b) = self.endpoints(arc);
        let (keep, gone) = (a.min(b), a.max(b));
        let mut next = self.clone();
        for g in next.group.iter_mut() {
            if *g == gone {
                *g = keep;
            }
        }
        next
    }

    /// Arcs with exactly one endpoint in a group marked by `side` (indexed
    /// by group id).
    pub fn crossing(&self, side: &[bool]) -> ArcSubset {
        (0..self.arcs.len())
            .filter(|&i| {
                let (a, b) = self.endpoints(i);
                side[a] != side[b]
            })
            .collect()
    }
}

struct Residual {
    // per directed residual edge: head, remaining capacity
    head: Vec<usize>,
    cap: Vec<u32>,
    // out-edges per node, sorted by (head, edge)
    out: Vec<Vec<usize>>,
}

impl Residual {
    fn new(g: &Multigraph) -> Self {
        let nodes = g.group.len();
        let mut r = Residual {
            head: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); nodes],
        };
        for arc in 0..g.arc_count() {
            let (a, b) = g.endpoints(arc);
            if a == b {
                continue;
            }
            // paired edges 2k and 2k+1; each direction starts with one unit
            let e = r.head.len();
            r.head.extend([b, a]);
            r.cap.extend([1, 1]);
            r.out[a].push(e);
            r.out[b].push(e + 1);
        }
        let head = &r.head;
        for edges in r.out.iter_mut() {
            edges.sort_by_key(|&e| (head[e], e));
        }
        r
    }

    /// Breadth-first search from `s`; returns the predecessor edge of every
    /// reached node (`usize::MAX` for `s` and unreached nodes) and the
    /// reached set.
    fn search(&self, s: usize) -> (Vec<usize>, Vec<bool>) {
        let n = self.out.len();
        let mut pred = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(v) = queue.pop_front() {
            for &e in &self.out[v] {
                let w = self.head[e];
                if self.cap[e] > 0 && !seen[w] {
                    seen[w] = true;
                    pred[w] = e;
                    queue.push_back(w);
                }
            }
        }
        (pred, seen)
    }

    fn max_flow(&mut self, s: usize, t: usize) -> u32 {
        let mut flow = 0;
        loop {
            let (pred, seen) = self.search(s);
            if !seen[t] {
                return flow;
            }
            let mut v = t;
            while v != s {
                let e = pred[v];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.head[e ^ 1];
            }
            flow += 1;
        }
    }
}

/// Minimum-cardinality cut between the groups of original nodes `s` and
/// `t`, taken on the source side of the final residual graph.
pub fn min_st_cut_canonical(g: &Multigraph, s: usize, t: usize) -> Result<ArcSubset, CutError> {
    let (s, t) = (g.group_of(s), g.group_of(t));
    if s == t {
        return Err(CutError::Merged(s));
    }
    let mut residual = Residual::new(g);
    let flow = residual.max_flow(s, t);
    let (_, source_side) = residual.search(s);
    let cut = g.crossing(&source_side);
    debug_assert_eq!(cut.len(), flow as usize);
    Ok(cut)
}
