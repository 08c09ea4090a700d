//! Seeded random test networks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Network, MAX_ARCS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("no simple connected graph has {nodes} nodes and {arcs} arcs")]
    Infeasible { nodes: usize, arcs: usize },
    #[error("{arcs} arcs exceeds the supported maximum of {max}", max = MAX_ARCS)]
    TooManyArcs { arcs: usize },
    #[error("probability range [{lo}, {hi}] is not inside [0, 1]")]
    BadRange { lo: f64, hi: f64 },
}

/// A connected simple network on `nodes` nodes with `arcs` arcs: a uniformly
/// random labelled spanning tree (random attachment order) plus distinct
/// extra arcs, each probability uniform in `p_range`. The same seed always
/// gives the same network.
pub fn gen_random_network(
    nodes: usize,
    arcs: usize,
    seed: u64,
    p_range: (f64, f64),
) -> Result<Network, GenError> {
    let (lo, hi) = p_range;
    if !(0.0 <= lo && lo <= hi && hi <= 1.0) {
        return Err(GenError::BadRange { lo, hi });
    }
    if nodes < 2 || arcs + 1 < nodes || arcs > nodes * (nodes - 1) / 2 {
        return Err(GenError::Infeasible { nodes, arcs });
    }
    if arcs > MAX_ARCS {
        return Err(GenError::TooManyArcs { arcs });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (1..=nodes).collect();
    order.shuffle(&mut rng);

    let mut chosen = vec![vec![false; nodes + 1]; nodes + 1];
    let mut pairs = Vec::with_capacity(arcs);
    for i in 1..nodes {
        let a = order[i];
        let b = order[rng.gen_range(0..i)];
        chosen[a][b] = true;
        chosen[b][a] = true;
        pairs.push((a.min(b), a.max(b)));
    }
    let mut spare: Vec<(usize, usize)> = (1..=nodes)
        .flat_map(|u| (u + 1..=nodes).map(move |v| (u, v)))
        .filter(|&(u, v)| !chosen[u][v])
        .collect();
    spare.shuffle(&mut rng);
    pairs.extend(spare.into_iter().take(arcs + 1 - nodes));

    let triples: Vec<_> = pairs
        .into_iter()
        .map(|(u, v)| (u, v, rng.gen_range(lo..=hi)))
        .collect();
    Ok(Network::new(nodes, &triples).expect("generated networks satisfy every invariant"))
}
