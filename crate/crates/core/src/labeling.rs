//! Arc labelings: which arc occupies each coordinate of a state vector.
//!
//! Coordinate 1 is the most significant bit of a state vector, so the arcs
//! given the smallest labels decide the coarsest split of the state space.
//! Putting the arcs of small source-sink cuts first lets short prefixes
//! settle connectivity early, which is what the bounded enumeration exploits.

use std::fmt;

use thiserror::Error;

use crate::cut::{min_st_cut_canonical, Multigraph};
use crate::graph::{ArcSubset, Network};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelingError {
    #[error("line {line}: expected `u v`, got {found:?}")]
    Malformed { line: usize, found: String },
    #[error("line {line}: e{u},{v} is not an arc of the network")]
    UnknownArc { line: usize, u: usize, v: usize },
    #[error("line {line}: e{u},{v} is labeled twice")]
    Duplicate { line: usize, u: usize, v: usize },
    #[error("labeling lists {found} arcs but the network has {expected}")]
    WrongCount { expected: usize, found: usize },
    #[error("arc order is not a permutation of 0..{0}")]
    NotPermutation(usize),
}

/// Bijection from label positions to arcs. `order()[i]` is the arc index
/// carrying label `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labeling {
    order: Vec<usize>,
    // position[arc] = 0-based label position
    position: Vec<usize>,
}

impl Labeling {
    /// Labels in file order.
    pub fn identity(net: &Network) -> Self {
        Self::from_order_unchecked((0..net.arc_count()).collect())
    }

    pub fn from_order(net: &Network, order: Vec<usize>) -> Result<Self, LabelingError> {
        let m = net.arc_count();
        let mut seen = vec![false; m];
        if order.len() != m {
            return Err(LabelingError::WrongCount {
                expected: m,
                found: order.len(),
            });
        }
        for &a in &order {
            if a >= m || std::mem::replace(&mut seen[a], true) {
                return Err(LabelingError::NotPermutation(m));
            }
        }
        Ok(Self::from_order_unchecked(order))
    }

    fn from_order_unchecked(order: Vec<usize>) -> Self {
        let mut position = vec![0; order.len()];
        for (i, &a) in order.iter().enumerate() {
            position[a] = i;
        }
        Labeling { order, position }
    }

    /// Labels arcs cut by cut: repeatedly find the canonical minimum cut
    /// between the (contracted) source and sink, give its unlabeled arcs
    /// the next labels in `(u, v)` order, then contract the cut arc with the
    /// highest label. Stops once source and sink merge; any arcs still
    /// unlabeled follow in `(u, v)` order.
    pub fn min_cut(net: &Network) -> Self {
        Self::min_cut_with_cuts(net).0
    }

    /// [`Labeling::min_cut`] together with the sequence of cuts it used.
    pub fn min_cut_with_cuts(net: &Network) -> (Self, Vec<ArcSubset>) {
        let m = net.arc_count();
        let by_endpoints = |arcs: &mut Vec<usize>| arcs.sort_by_key(|&a| net.arc(a).endpoints());

        let mut graph = Multigraph::from_network(net);
        let mut order = Vec::with_capacity(m);
        let mut labeled = ArcSubset::empty();
        let mut cuts = Vec::new();

        while order.len() < m {
            let Ok(cut) = min_st_cut_canonical(&graph, net.source(), net.sink()) else {
                break;
            };
            let mut fresh: Vec<usize> = cut.difference(&labeled).iter().collect();
            by_endpoints(&mut fresh);
            for &a in &fresh {
                labeled.insert(a);
                order.push(a);
            }
            let position = |a: usize| order.iter().position(|&b| b == a).unwrap();
            let pivot = cut
                .iter()
                .max_by_key(|&a| position(a))
                .expect("a minimum cut of a connected graph is non-empty");
            graph = graph.contract(pivot);
            cuts.push(cut);
        }

        let mut rest: Vec<usize> = ArcSubset::full(m).difference(&labeled).iter().collect();
        by_endpoints(&mut rest);
        order.extend(rest);
        (Self::from_order_unchecked(order), cuts)
    }

    /// Reads `m` lines of `u v`; `#` starts a comment line.
    pub fn parse(text: &str, net: &Network) -> Result<Self, LabelingError> {
        let mut order = Vec::with_capacity(net.arc_count());
        let mut first_line = vec![0usize; net.arc_count()];
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let fields: Vec<usize> = body
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .ok()
                .filter(|f: &Vec<usize>| f.len() == 2)
                .ok_or_else(|| LabelingError::Malformed {
                    line,
                    found: body.to_string(),
                })?;
            let (u, v) = (fields[0], fields[1]);
            let arc = (u != v)
                .then(|| net.find_arc(u, v))
                .flatten()
                .ok_or(LabelingError::UnknownArc { line, u, v })?;
            if first_line[arc] != 0 {
                return Err(LabelingError::Duplicate { line, u, v });
            }
            first_line[arc] = line;
            order.push(arc);
        }
        if order.len() != net.arc_count() {
            return Err(LabelingError::WrongCount {
                expected: net.arc_count(),
                found: order.len(),
            });
        }
        Ok(Self::from_order_unchecked(order))
    }

    /// One `u v` line per label, in label order.
    pub fn to_text(&self, net: &Network) -> String {
        self.order
            .iter()
            .map(|&a| {
                let (u, v) = net.arc(a).endpoints();
                format!("{u} {v}\n")
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Arc carrying the 0-based label position `pos`.
    pub fn arc_at(&self, pos: usize) -> usize {
        self.order[pos]
    }

    /// 0-based label position of `arc`.
    pub fn position_of(&self, arc: usize) -> usize {
        self.position[arc]
    }

    /// Arcs whose coordinate in `bits` is 1.
    pub fn up_set(&self, bits: &[bool]) -> ArcSubset {
        bits.iter()
            .zip(&self.order)
            .filter(|(&b, _)| b)
            .map(|(_, &a)| a)
            .collect()
    }

    /// Arcs whose coordinate in `bits` is 0.
    pub fn down_set(&self, bits: &[bool]) -> ArcSubset {
        bits.iter()
            .zip(&self.order)
            .filter(|(&b, _)| !b)
            .map(|(_, &a)| a)
            .collect()
    }

    /// Arcs with label position `>= k` (not fixed by a length-`k` prefix).
    pub fn free_set(&self, k: usize) -> ArcSubset {
        self.order[k.min(self.order.len())..]
            .iter()
            .copied()
            .collect()
    }
}

/// Displays as `(a, b, ..)` with 0-based arc indices.
impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.order.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}
