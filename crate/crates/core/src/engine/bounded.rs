use std::time::Instant;

use super::{Counters, Method, Mode, ResolvedPrefix, SolveReport, BOUNDED_WARN_LABELS};
use crate::bounds::{
    first_connected_counted, last_disconnected_counted, prob_skipped_after, prob_skipped_before,
};
use crate::graph::Network;
use crate::labeling::Labeling;
use crate::probability::prefix_prob;
use crate::state::{classify, PrefixStatus, StateVector};

/// Bounded binary-addition-tree reliability.
///
/// The mass below `X_FC` is added to `U` in closed form. Starting at
/// `X_FC`, each step finds the shortest prefix of the current vector whose
/// verdict is already determined, records it, and jumps to the first vector
/// after that prefix's block. The walk stops once the current vector lies
/// above `X_LD`; everything beyond is connected and its mass is known in
/// closed form too.
///
/// With [`Mode::DisconnectedSum`] the reliability is `1 - U`; with
/// [`Mode::ConnectedSum`] it is the resolved connected mass plus the mass
/// above `X_LD`. Both sums are reported either way.
pub fn bounded_bat(net: &Network, lab: &Labeling, mode: Mode) -> SolveReport {
    let started = Instant::now();
    let m = net.arc_count();
    let mut checks = 0;

    let xfc = first_connected_counted(net, lab, &mut checks);
    let xld = last_disconnected_counted(net, lab, &mut checks);
    let pre = prob_skipped_before(net, lab, &xfc);
    let post = prob_skipped_after(net, lab, &xld);

    let mut disconnected = pre;
    let mut connected = 0.0;
    let mut trace = Vec::new();
    let mut current: Option<StateVector> = Some(xfc.clone());

    while let Some(x) = current.take() {
        if x.value() > xld.value() {
            break;
        }
        let (prefix, status) = (1..=m)
            .find_map(|k| {
                let prefix = x.prefix(k);
                let status =
                    classify(net, lab, prefix.bits(), &mut checks).expect("k never exceeds m");
                status.is_determined().then_some((prefix, status))
            })
            .expect("a full-length prefix is always determined");
        let prob = prefix_prob(net, lab, &prefix).expect("prefix of a full vector");
        match status {
            PrefixStatus::Disconnected => disconnected += prob,
            _ => connected += prob,
        }
        let (first_index, last_index) = prefix.index_range(m);
        current = prefix.successor().map(|next| next.zero_fill(m));
        trace.push(ResolvedPrefix {
            bits: prefix,
            status,
            prob,
            first_index,
            last_index,
        });
    }

    let reliability = match mode {
        Mode::DisconnectedSum => 1.0 - disconnected,
        Mode::ConnectedSum => connected + post,
    };
    let mut report = SolveReport::new(Method::Bounded, reliability);
    report.mode = Some(mode);
    report.u_mass = Some(disconnected);
    report.pre_mass = Some(pre);
    report.post_mass = Some(post);
    report.x_fc = Some(xfc);
    report.x_ld = Some(xld);
    report.counters = Counters {
        full_vectors_covered: trace.iter().map(ResolvedPrefix::vector_count).sum(),
        prefixes_resolved: trace.len() as u64,
        connectivity_checks: checks,
    };
    report.trace = trace;
    if m > BOUNDED_WARN_LABELS {
        report.warnings.push(format!(
            "{m} labeled arcs; bounded enumeration may take very long above {BOUNDED_WARN_LABELS}"
        ));
    }
    report.elapsed = started.elapsed();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn bridge_run_totals() {
        let net = fixtures::bridge();
        let lab = fixtures::bridge_labeling(&net);
        let report = bounded_bat(&net, &lab, Mode::DisconnectedSum);
        assert!((report.reliability - 0.9078784).abs() < 1e-12);
        assert!((report.u_mass.unwrap() - 0.0921216).abs() < 1e-12);
        let first = &report.trace[0];
        assert_eq!(first.bits.to_string(), "0101011");
        assert_eq!((first.first_index, first.last_index), (44, 44));
        let last = report.trace.last().unwrap();
        assert_eq!(last.bits.to_string(), "110100");
        assert_eq!((last.first_index, last.last_index), (105, 106));
    }

    #[test]
    fn series_path_halts_immediately() {
        let p = 0.7;
        let net = Network::new(3, &[(1, 2, p), (2, 3, p)]).unwrap();
        let lab = Labeling::identity(&net);
        for mode in [Mode::DisconnectedSum, Mode::ConnectedSum] {
            let report = bounded_bat(&net, &lab, mode);
            assert!(report.trace.is_empty());
            assert!((report.reliability - p * p).abs() < 1e-15);
        }
    }

    #[test]
    fn single_edge() {
        let net = Network::new(2, &[(1, 2, 0.25)]).unwrap();
        let lab = Labeling::identity(&net);
        let report = bounded_bat(&net, &lab, Mode::DisconnectedSum);
        assert!((report.reliability - 0.25).abs() < 1e-15);
        assert!(report.trace.is_empty());
    }
}
