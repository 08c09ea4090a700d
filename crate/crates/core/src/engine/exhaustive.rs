use std::time::Instant;

use super::{Counters, EngineError, EnumerationSummary, Method, ResolvedPrefix, SolveReport};
use crate::directed::DirectedNetwork;
use crate::graph::{ArcSubset, Network};
use crate::labeling::Labeling;
use crate::probability::{common_probability, homogeneous_prob};
use crate::state::{Prefix, PrefixStatus};

/// Classic methods keep one trace row per vector only up to this many
/// coordinates (`2^20` rows).
pub const TRACE_LIMIT: usize = 20;

#[derive(Default)]
struct Tally {
    connected: f64,
    disconnected: f64,
    vectors: u64,
    connected_vectors: u64,
    first_connected: Option<u64>,
    last_disconnected: Option<u64>,
    checks: u64,
    trace: Vec<ResolvedPrefix>,
}

impl Tally {
    fn record(&mut self, bits: &[bool], index: u64, connected: bool, prob: f64, keep: bool) {
        self.vectors += 1;
        self.checks += 1;
        if connected {
            self.connected += prob;
            self.connected_vectors += 1;
            self.first_connected.get_or_insert(index);
        } else {
            self.disconnected += prob;
            self.last_disconnected = Some(index);
        }
        if keep {
            self.trace.push(ResolvedPrefix {
                bits: Prefix::new(bits.to_vec()),
                status: if connected {
                    PrefixStatus::Connected
                } else {
                    PrefixStatus::Disconnected
                },
                prob,
                first_index: index,
                last_index: index,
            });
        }
    }

    fn into_report(self, method: Method, started: Instant, coordinates: usize) -> SolveReport {
        let mut report = SolveReport::new(method, self.connected);
        report.u_mass = Some(self.disconnected);
        report.counters = Counters {
            full_vectors_covered: self.vectors,
            prefixes_resolved: self.trace.len() as u64,
            connectivity_checks: self.checks,
        };
        report.enumeration = Some(EnumerationSummary {
            vectors: self.vectors,
            connected_vectors: self.connected_vectors,
            first_connected_index: self.first_connected,
            last_disconnected_index: self.last_disconnected,
        });
        if coordinates > TRACE_LIMIT && method != Method::Oracle {
            report.warnings.push(format!(
                "trace omitted: {coordinates} coordinates exceed the trace limit of {TRACE_LIMIT}"
            ));
        }
        report.trace = self.trace;
        report.elapsed = started.elapsed();
        report
    }
}

fn check_cap(method: Method, arcs: usize, cap: usize) -> Result<(), EngineError> {
    if arcs > cap {
        Err(EngineError::CapExceeded { method, arcs, cap })
    } else {
        Ok(())
    }
}

/// Sums the probability of every connected full vector, visiting vectors
/// by integer value. Produces no trace.
pub fn brute_force_reliability(
    net: &Network,
    lab: &Labeling,
    cap: usize,
) -> Result<SolveReport, EngineError> {
    let m = net.arc_count();
    check_cap(Method::Oracle, m, cap)?;
    let started = Instant::now();
    let mut tally = Tally::default();
    for value in 0..1u64 << m {
        let mut up = ArcSubset::empty();
        let mut prob = 1.0;
        for pos in 0..m {
            let arc = lab.arc_at(pos);
            let p = net.up_prob(arc);
            if (value >> (m - 1 - pos)) & 1 == 1 {
                up.insert(arc);
                prob *= p;
            } else {
                prob *= 1.0 - p;
            }
        }
        tally.record(&[], value + 1, net.st_connected(&up), prob, false);
    }
    Ok(tally.into_report(Method::Oracle, started, m))
}

/// Walks `2^len` vectors in binary-addition-tree order starting from the
/// zero vector, keeping the count of 1-coordinates up to date, and calls
/// `visit(bits, index, ones)` on each.
fn bat_walk(len: usize, mut visit: impl FnMut(&[bool], u64, usize)) {
    let mut x = vec![false; len];
    let mut ones = 0;
    let mut index = 1;
    loop {
        visit(&x, index, ones);
        // carry from the last coordinate towards the first
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if x[i] {
                x[i] = false;
                ones -= 1;
            } else {
                x[i] = true;
                ones += 1;
                break;
            }
        }
        index += 1;
    }
}

/// Enumerates every undirected state vector in BAT order.
pub fn classic_bat_undirected(
    net: &Network,
    lab: &Labeling,
    cap: usize,
) -> Result<SolveReport, EngineError> {
    let m = net.arc_count();
    check_cap(Method::ClassicUndirected, m, cap)?;
    let started = Instant::now();
    let common = common_probability(net);
    let keep = m <= TRACE_LIMIT;
    let mut tally = Tally::default();
    bat_walk(m, |x, index, ones| {
        let prob = match common {
            Some(r) => homogeneous_prob(r, ones, m - ones),
            None => x.iter().enumerate().fold(1.0, |acc, (pos, &b)| {
                let p = net.up_prob(lab.arc_at(pos));
                acc * if b { p } else { 1.0 - p }
            }),
        };
        let connected = net.st_connected(&lab.up_set(x));
        tally.record(x, index, connected, prob, keep);
    });
    Ok(tally.into_report(Method::ClassicUndirected, started, m))
}

/// Enumerates every state vector of the directed expansion in BAT order,
/// coordinates in the expansion's arc order.
pub fn classic_bat_directed(net: &Network, cap: usize) -> Result<SolveReport, EngineError> {
    let dnet = DirectedNetwork::expand(net);
    let m = dnet.arc_count();
    check_cap(Method::ClassicDirected, m, cap)?;
    let started = Instant::now();
    let keep = m <= TRACE_LIMIT;
    let mut tally = Tally::default();
    bat_walk(m, |x, index, _| {
        let mut up = ArcSubset::empty();
        let mut prob = 1.0;
        for (i, (&b, arc)) in x.iter().zip(dnet.arcs()).enumerate() {
            if b {
                up.insert(i);
                prob *= arc.up_prob;
            } else {
                prob *= 1.0 - arc.up_prob;
            }
        }
        tally.record(x, index, dnet.st_connected(&up), prob, keep);
    });
    Ok(tally.into_report(Method::ClassicDirected, started, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn bat_walk_visits_every_vector_once_in_order() {
        let mut seen = Vec::new();
        bat_walk(4, |x, index, ones| {
            let value = x.iter().fold(0u64, |a, &b| (a << 1) | b as u64);
            assert_eq!(index, value + 1);
            assert_eq!(ones, x.iter().filter(|&&b| b).count());
            seen.push(value);
        });
        assert_eq!(seen, (0..16).collect::<Vec<_>>());
    }

    #[test]
    fn single_edge_everywhere() {
        let net = Network::new(2, &[(1, 2, 0.3)]).unwrap();
        let lab = Labeling::identity(&net);
        let oracle = brute_force_reliability(&net, &lab, 24).unwrap();
        assert!((oracle.reliability - 0.3).abs() < 1e-15);
        assert_eq!(oracle.counters.full_vectors_covered, 2);
        let directed = classic_bat_directed(&net, 24).unwrap();
        let summary = directed.enumeration.unwrap();
        assert_eq!((summary.vectors, summary.connected_vectors), (2, 1));
    }

    #[test]
    fn bridge_classic_runs() {
        let net = fixtures::bridge();
        let lab = fixtures::bridge_labeling(&net);
        let undirected = classic_bat_undirected(&net, &lab, 24).unwrap();
        assert_eq!(undirected.trace.len(), 128);
        assert!((undirected.reliability - 0.9078784).abs() < 1e-12);
        let row = &undirected.trace[74];
        assert_eq!(row.bits.to_string(), "1001010");
        assert!(row.is_connected());
        assert!((row.prob * 1e7 - 8192.0).abs() < 1e-6);
        let oracle = brute_force_reliability(&net, &lab, 24).unwrap();
        assert!((oracle.reliability - 0.9078784).abs() < 1e-12);
        assert!(oracle.trace.is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let net = fixtures::bridge();
        let lab = fixtures::bridge_labeling(&net);
        assert!(matches!(
            brute_force_reliability(&net, &lab, 6),
            Err(EngineError::CapExceeded {
                arcs: 7,
                cap: 6,
                ..
            })
        ));
        assert!(classic_bat_directed(&net, 9).is_err());
        assert!(classic_bat_directed(&net, 10).is_ok());
    }
}
