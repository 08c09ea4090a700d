//! First connected vector, last disconnected vector and the closed-form
//! probability of the ranges they let the enumeration skip.
//!
//! Every vector below `X_FC` is disconnected and every vector above `X_LD`
//! is connected. Both are built greedily one coordinate at a time:
//!
//! * `X_FC`: a coordinate is 0 unless failing its arc (on top of the arcs
//!   already failed) would cut the source from the sink.
//! * `X_LD`: a coordinate is 1 unless adding its arc (to the arcs already
//!   up) would join source and sink.
//!
//! The vectors below `X_FC` split into one block per 1-coordinate of
//! `X_FC`: the block shares `X_FC`'s coordinates before it and has a 0 there.
//! Symmetrically the vectors above `X_LD` split into one block per
//! 0-coordinate. Each block's mass is a single prefix product.

use crate::graph::{ArcSubset, Network};
use crate::labeling::Labeling;
use crate::probability::prefix_prob;
use crate::state::{Prefix, StateVector};

pub(crate) fn first_connected_counted(
    net: &Network,
    lab: &Labeling,
    checks: &mut u64,
) -> StateVector {
    let all = ArcSubset::full(net.arc_count());
    let mut down = ArcSubset::empty();
    let bits = lab
        .order()
        .iter()
        .map(|&arc| {
            let mut trial = down;
            trial.insert(arc);
            *checks += 1;
            let cuts = !net.st_connected(&all.difference(&trial));
            if !cuts {
                down = trial;
            }
            cuts
        })
        .collect();
    StateVector::new(bits)
}

pub(crate) fn last_disconnected_counted(
    net: &Network,
    lab: &Labeling,
    checks: &mut u64,
) -> StateVector {
    let mut up = ArcSubset::empty();
    let bits = lab
        .order()
        .iter()
        .map(|&arc| {
            let mut trial = up;
            trial.insert(arc);
            *checks += 1;
            let joins = net.st_connected(&trial);
            if !joins {
                up = trial;
            }
            !joins
        })
        .collect();
    StateVector::new(bits)
}

/// The smallest connected state vector `X_FC` under `lab`.
pub fn find_first_connected(net: &Network, lab: &Labeling) -> StateVector {
    first_connected_counted(net, lab, &mut 0)
}

/// The largest disconnected state vector `X_LD` under `lab`.
pub fn find_last_disconnected(net: &Network, lab: &Labeling) -> StateVector {
    last_disconnected_counted(net, lab, &mut 0)
}

/// Prefixes whose extensions are exactly the vectors below `xfc`, in
/// increasing order.
pub fn prefixes_before(xfc: &StateVector) -> Vec<Prefix> {
    xfc.bits()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(f, _)| xfc.prefix(f).extended(false))
        .collect()
}

/// Prefixes whose extensions are exactly the vectors above `xld`, in
/// decreasing order.
pub fn prefixes_after(xld: &StateVector) -> Vec<Prefix> {
    xld.bits()
        .iter()
        .enumerate()
        .filter(|(_, &b)| !b)
        .map(|(f, _)| xld.prefix(f).extended(true))
        .collect()
}

fn mass(net: &Network, lab: &Labeling, prefixes: &[Prefix]) -> f64 {
    prefixes
        .iter()
        .map(|p| prefix_prob(net, lab, p).expect("prefix of a labeled vector"))
        .sum()
}

/// Probability mass of all vectors strictly below `xfc`.
pub fn prob_skipped_before(net: &Network, lab: &Labeling, xfc: &StateVector) -> f64 {
    mass(net, lab, &prefixes_before(xfc))
}

/// Probability mass of all vectors strictly above `xld`.
pub fn prob_skipped_after(net: &Network, lab: &Labeling, xld: &StateVector) -> f64 {
    mass(net, lab, &prefixes_after(xld))
}
