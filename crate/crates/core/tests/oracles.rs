//! Checks against the independent enumeration oracles in `common`.

use relbat::cut::{min_st_cut_canonical, Multigraph};
use relbat::graph::ArcSubset;
use relbat::{
    bounded_bat, brute_force_reliability, classic_bat_directed, directed_expansion,
    find_first_connected, find_last_disconnected, fixtures, gen_random_network, prob_skipped_after,
    prob_skipped_before, Labeling, Mode, Network, StateVector,
};

mod common;

use common::{enumerate, path_exists};

const TOL: f64 = 1e-12;

#[test]
fn table_one_reference_reliability() {
    // exact rational enumeration of the heterogeneous bridge network gives
    // R = 0.98244471, mass below X_FC 0.00423856, mass above X_LD 0.775327
    let net = fixtures::bridge_heterogeneous();
    let lab = fixtures::bridge_labeling(&net);
    let rows = enumerate(&net, &lab);
    let reliability: f64 = rows.iter().filter(|r| r.1).map(|r| r.2).sum();
    assert!((reliability - 0.98244471).abs() < TOL);

    let oracle = brute_force_reliability(&net, &lab, 24).unwrap();
    assert!((oracle.reliability - 0.98244471).abs() < TOL);

    let xfc = find_first_connected(&net, &lab);
    let xld = find_last_disconnected(&net, &lab);
    assert_eq!((xfc.value(), xld.value()), (43, 105));
    let before: f64 = rows.iter().filter(|r| r.0 < 43).map(|r| r.2).sum();
    let after: f64 = rows.iter().filter(|r| r.0 > 105).map(|r| r.2).sum();
    assert!((before - 0.00423856).abs() < TOL);
    assert!((after - 0.775327).abs() < TOL);
    assert!((prob_skipped_before(&net, &lab, &xfc) - before).abs() < TOL);
    assert!((prob_skipped_after(&net, &lab, &xld) - after).abs() < TOL);
}

#[test]
fn bounds_match_enumeration_on_random_networks() {
    for seed in 0..60 {
        let nodes = 3 + (seed as usize % 6);
        let max = (nodes * (nodes - 1) / 2).min(12);
        let arcs = nodes - 1 + (seed as usize * 7) % (max - nodes + 2);
        let net = gen_random_network(nodes, arcs, seed, (0.05, 0.95)).unwrap();
        for lab in [Labeling::identity(&net), Labeling::min_cut(&net)] {
            let rows = enumerate(&net, &lab);
            let m = net.arc_count();
            let first = rows.iter().find(|r| r.1).unwrap().0;
            let last = rows.iter().rev().find(|r| !r.1).unwrap().0;
            let xfc = find_first_connected(&net, &lab);
            let xld = find_last_disconnected(&net, &lab);
            assert_eq!(xfc, StateVector::from_value(first, m), "seed {seed}");
            assert_eq!(xld, StateVector::from_value(last, m), "seed {seed}");

            let before: f64 = rows.iter().filter(|r| r.0 < first).map(|r| r.2).sum();
            let after: f64 = rows.iter().filter(|r| r.0 > last).map(|r| r.2).sum();
            assert!((prob_skipped_before(&net, &lab, &xfc) - before).abs() < TOL);
            assert!((prob_skipped_after(&net, &lab, &xld) - after).abs() < TOL);

            let reliability: f64 = rows.iter().filter(|r| r.1).map(|r| r.2).sum();
            let bounded = bounded_bat(&net, &lab, Mode::DisconnectedSum);
            assert!(
                (bounded.reliability - reliability).abs() < TOL,
                "seed {seed}"
            );
        }
    }
}

#[test]
fn min_cuts_are_minimum() {
    for seed in 0..40 {
        let nodes = 3 + (seed as usize % 5);
        let max = (nodes * (nodes - 1) / 2).min(12);
        let arcs = nodes - 1 + (seed as usize * 5) % (max - nodes + 2);
        let net = gen_random_network(nodes, arcs, 1000 + seed, (0.5, 0.5)).unwrap();
        let m = net.arc_count();
        let cut = min_st_cut_canonical(&Multigraph::from_network(&net), 1, nodes).unwrap();
        let remaining = ArcSubset::full(m).difference(&cut);
        assert!(!net.st_connected(&remaining), "seed {seed}: not a cut");
        let smallest = (0u32..1 << m)
            .filter(|mask| {
                let removed = ArcSubset::from_indices((0..m).filter(|i| mask >> i & 1 == 1));
                let edges: Vec<_> = (0..m)
                    .filter(|&i| !removed.contains(i))
                    .map(|i| net.arc(i).endpoints())
                    .collect();
                !path_exists(nodes, &edges, false)
            })
            .map(u32::count_ones)
            .min()
            .unwrap() as usize;
        assert_eq!(cut.len(), smallest, "seed {seed}");
    }
}

#[test]
fn directed_and_undirected_connected_mass_agree() {
    for seed in 0..30 {
        let nodes = 3 + (seed as usize % 4);
        let max = (nodes * (nodes - 1) / 2).min(8);
        let arcs = nodes - 1 + (seed as usize * 3) % (max - nodes + 2);
        let net = gen_random_network(nodes, arcs, 2000 + seed, (0.05, 0.95)).unwrap();
        let dnet = directed_expansion(&net);
        assert_eq!(
            dnet.arc_count(),
            2 * net.arc_count() - net.degree(1) - net.degree(nodes) + single_hop(&net),
            "seed {seed}"
        );

        let md = dnet.arc_count();
        let mut directed = 0.0;
        for value in 0u64..1 << md {
            let mut edges = Vec::new();
            let mut prob = 1.0;
            for (i, arc) in dnet.arcs().iter().enumerate() {
                if value >> (md - 1 - i) & 1 == 1 {
                    edges.push((arc.tail, arc.head));
                    prob *= arc.up_prob;
                } else {
                    prob *= 1.0 - arc.up_prob;
                }
            }
            if path_exists(nodes, &edges, true) {
                directed += prob;
            }
        }
        let undirected: f64 = enumerate(&net, &Labeling::identity(&net))
            .iter()
            .filter(|r| r.1)
            .map(|r| r.2)
            .sum();
        assert!((directed - undirected).abs() < TOL, "seed {seed}");
        let classic = classic_bat_directed(&net, 24).unwrap();
        assert!((classic.reliability - directed).abs() < TOL, "seed {seed}");
    }
}

/// A direct source-sink arc keeps its forward copy but is counted in both
/// terminal degrees.
fn single_hop(net: &Network) -> usize {
    net.find_arc(1, net.node_count()).is_some() as usize
}
