use proptest::prelude::*;

use relbat::bounds::{prefixes_after, prefixes_before};
use relbat::cut::{min_st_cut_canonical, Multigraph};
use relbat::probability::homogeneous_prob;
use relbat::{
    bat_successor, bounded_bat, brute_force_reliability, classic_bat_undirected,
    find_first_connected, find_last_disconnected, gen_random_network, prefix_prob, prefix_status,
    vector_prob, Labeling, Mode, Network, Prefix, PrefixStatus, StateVector,
};

const TOL: f64 = 1e-12;

/// Random connected networks with 3..=8 nodes and at most 12 arcs.
fn network(max_arcs: usize) -> impl Strategy<Value = Network> {
    (3usize..=8, any::<u64>(), any::<u16>()).prop_map(move |(nodes, seed, extra)| {
        let max = (nodes * (nodes - 1) / 2).min(max_arcs);
        let arcs = nodes - 1 + extra as usize % (max - nodes + 2);
        gen_random_network(nodes, arcs, seed, (0.05, 0.95)).unwrap()
    })
}

fn labeling(net: &Network, shuffle: u64) -> Labeling {
    // a deterministic permutation derived from `shuffle`
    let mut order: Vec<usize> = (0..net.arc_count()).collect();
    let mut state = shuffle | 1;
    for i in (1..order.len()).rev() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        order.swap(i, (state % (i as u64 + 1)) as usize);
    }
    Labeling::from_order(net, order).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prefix_status_is_sound(net in network(10), shuffle in any::<u64>(), raw in any::<u64>(), len in 0usize..=10) {
        let lab = labeling(&net, shuffle);
        let m = net.arc_count();
        let k = len.min(m);
        let bits: Vec<bool> = (0..k).map(|i| raw >> i & 1 == 1).collect();
        let status = prefix_status(&net, &lab, &bits).unwrap();
        if k == m {
            prop_assert_ne!(status, PrefixStatus::Undetermined);
        }
        let mut outcomes = (0u64..1 << (m - k)).map(|tail| {
            let mut full = bits.clone();
            full.extend((0..m - k).map(|i| tail >> i & 1 == 1));
            net.st_connected(&lab.up_set(&full))
        });
        match status {
            PrefixStatus::Connected => prop_assert!(outcomes.all(|c| c)),
            PrefixStatus::Disconnected => prop_assert!(outcomes.all(|c| !c)),
            PrefixStatus::Undetermined => {
                let all: Vec<bool> = outcomes.collect();
                prop_assert!(all.iter().any(|&c| c) && all.iter().any(|&c| !c));
            }
        }
    }

    #[test]
    fn prefix_mass_marginalizes(net in network(12), shuffle in any::<u64>(), raw in any::<u64>(), len in 0usize..12) {
        let lab = labeling(&net, shuffle);
        let k = len.min(net.arc_count() - 1);
        let p = Prefix::new((0..k).map(|i| raw >> i & 1 == 1).collect());
        let whole = prefix_prob(&net, &lab, &p).unwrap();
        let split = prefix_prob(&net, &lab, &p.extended(false)).unwrap()
            + prefix_prob(&net, &lab, &p.extended(true)).unwrap();
        prop_assert!((whole - split).abs() <= 1e-15 * whole.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn vector_masses_sum_to_one(net in network(12)) {
        let lab = Labeling::identity(&net);
        let m = net.arc_count();
        let total: f64 = (0..1u64 << m)
            .map(|v| vector_prob(&net, &lab, &StateVector::from_value(v, m)).unwrap())
            .sum();
        prop_assert!((total - 1.0).abs() < TOL);
    }

    #[test]
    fn homogeneous_shortcut_matches_product(r in 0.0f64..=1.0, raw in any::<u16>(), m in 1usize..=12) {
        let probs = vec![r; m];
        let net = Network::new(m + 1, &(1..=m).map(|i| (i, i + 1, r)).collect::<Vec<_>>()).unwrap();
        let net = net.with_probabilities(&probs).unwrap();
        let lab = Labeling::identity(&net);
        let x = StateVector::from_value(raw as u64 & ((1 << m) - 1), m);
        let ones = Prefix::from(x.clone()).count_ones();
        let product = vector_prob(&net, &lab, &x).unwrap();
        let shortcut = homogeneous_prob(r, ones, m - ones);
        prop_assert!((product - shortcut).abs() <= 4.0 * f64::EPSILON * product.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn successor_adds_one(raw in any::<u64>(), m in 1usize..=20) {
        let value = raw & ((1 << m) - 1);
        let x = StateVector::from_value(value, m);
        match bat_successor(&x) {
            Some(next) => prop_assert_eq!(next.value(), value + 1),
            None => prop_assert_eq!(value, (1 << m) - 1),
        }
    }

    #[test]
    fn min_cut_labeling_is_deterministic_and_leads_with_first_cut(net in network(12)) {
        let lab = Labeling::min_cut(&net);
        prop_assert_eq!(&lab, &Labeling::min_cut(&net));
        prop_assert!(Labeling::from_order(&net, lab.order().to_vec()).is_ok());
        let first = min_st_cut_canonical(&Multigraph::from_network(&net), 1, net.node_count()).unwrap();
        prop_assert!(lab.order()[..first.len()].iter().all(|&a| first.contains(a)));
    }

    #[test]
    fn skipped_blocks_tile_the_ends(net in network(12), shuffle in any::<u64>()) {
        let lab = labeling(&net, shuffle);
        let m = net.arc_count();
        let xfc = find_first_connected(&net, &lab);
        let xld = find_last_disconnected(&net, &lab);
        let before = prefixes_before(&xfc);
        let sizes: u64 = before.iter().map(|p| p.extension_count(m)).sum();
        prop_assert_eq!(sizes, xfc.value());
        let mut next = 1;
        for p in &before {
            let (first, last) = p.index_range(m);
            prop_assert_eq!(first, next);
            next = last + 1;
        }
        let after = prefixes_after(&xld);
        let sizes: u64 = after.iter().map(|p| p.extension_count(m)).sum();
        prop_assert_eq!(sizes, (1u64 << m) - 1 - xld.value());
        let mut next = 1u64 << m;
        for p in &after {
            let (first, last) = p.index_range(m);
            prop_assert_eq!(last, next);
            next = first - 1;
        }
    }

    #[test]
    fn bounded_run_invariants(net in network(12), shuffle in any::<u64>()) {
        let lab = labeling(&net, shuffle);
        let m = net.arc_count();
        let down = bounded_bat(&net, &lab, Mode::DisconnectedSum);
        let up = bounded_bat(&net, &lab, Mode::ConnectedSum);
        prop_assert!((down.reliability - up.reliability).abs() < TOL);
        prop_assert_eq!(&down.trace, &up.trace);

        let oracle = brute_force_reliability(&net, &lab, 24).unwrap();
        prop_assert!((down.reliability - oracle.reliability).abs() < TOL);
        let classic = classic_bat_undirected(&net, &lab, 24).unwrap();
        prop_assert!((classic.reliability - oracle.reliability).abs() < TOL);

        let resolved: f64 = down.trace.iter().map(|r| r.prob).sum();
        let total = down.pre_mass.unwrap() + resolved + down.post_mass.unwrap();
        prop_assert!((total - 1.0).abs() < TOL);
        prop_assert!((down.reliability + down.u_mass.unwrap() - 1.0).abs() < TOL);

        let xfc = down.x_fc.as_ref().unwrap();
        let xld = down.x_ld.as_ref().unwrap();
        let mut next = xfc.index();
        for row in &down.trace {
            prop_assert_eq!(row.first_index, next);
            prop_assert_eq!(row.last_index - row.first_index + 1, 1u64 << (m - row.bits.len()));
            next = row.last_index + 1;
        }
        if xld.value() >= xfc.value() {
            prop_assert_eq!(next, xld.index() + 1);
        } else {
            prop_assert!(down.trace.is_empty());
        }
        prop_assert!(down.counters.prefixes_resolved <= 1u64 << m);
    }

    #[test]
    fn generated_networks_round_trip(net in network(12)) {
        prop_assert_eq!(Network::parse(&net.to_text()).unwrap(), net);
    }
}
