//! The five-node bridge network used throughout the documentation and tests.
//!
//! Nodes 1..5, source 1, sink 5. Arcs are listed in the order
//! `e12, e13, e35, e45, e34, e24, e23`, which is also the reference labeling,
//! so [`Labeling::identity`] and [`bridge_labeling`] coincide.

use crate::graph::Network;
use crate::labeling::Labeling;

/// Text form of the bridge network with every arc working with probability 0.8.
pub const BRIDGE_NETWORK: &str = "\
# bridge network, every arc up with probability 0.8
5 7 1 5
1 2 0.8
1 3 0.8
3 5 0.8
4 5 0.8
3 4 0.8
2 4 0.8
2 3 0.8
";

/// Reference labeling `a1..a7 = e12, e13, e35, e45, e34, e24, e23`.
pub const BRIDGE_LABELING: &str = "\
1 2
1 3
3 5
4 5
3 4
2 4
2 3
";

/// Heterogeneous arc probabilities, by label.
pub const HETEROGENEOUS_PROBABILITIES: [f64; 7] = [0.98, 0.80, 0.85, 0.95, 0.75, 0.90, 0.88];

pub fn bridge() -> Network {
    Network::parse(BRIDGE_NETWORK).expect("bridge fixture is valid")
}

/// The bridge network with [`HETEROGENEOUS_PROBABILITIES`].
pub fn bridge_heterogeneous() -> Network {
    bridge()
        .with_probabilities(&HETEROGENEOUS_PROBABILITIES)
        .expect("probabilities are in range")
}

pub fn bridge_labeling(net: &Network) -> Labeling {
    Labeling::parse(BRIDGE_LABELING, net).expect("labeling fixture matches the network")
}
