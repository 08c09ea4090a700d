//! Network model, input formats and source-sink connectivity.

use std::collections::HashMap;
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

/// Largest supported arc count. State vectors are packed into 64-bit words
/// and the directed expansion (at most `2m` arcs) into an [`ArcSubset`].
pub const MAX_ARCS: usize = 63;

/// A set of arc indices, used for up-arc and down-arc sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ArcSubset(u128);

impl ArcSubset {
    pub const CAPACITY: usize = 128;

    pub const fn empty() -> Self {
        ArcSubset(0)
    }

    /// The set `{0, 1, .., len - 1}`.
    pub fn full(len: usize) -> Self {
        assert!(
            len <= Self::CAPACITY,
            "arc subset of {len} arcs exceeds capacity"
        );
        if len == Self::CAPACITY {
            ArcSubset(u128::MAX)
        } else {
            ArcSubset((1u128 << len) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut set = Self::empty();
        for i in indices {
            set.insert(i);
        }
        set
    }

    pub fn insert(&mut self, arc: usize) {
        assert!(arc < Self::CAPACITY, "arc index {arc} out of range");
        self.0 |= 1u128 << arc;
    }

    pub fn remove(&mut self, arc: usize) {
        if arc < Self::CAPACITY {
            self.0 &= !(1u128 << arc);
        }
    }

    pub fn contains(&self, arc: usize) -> bool {
        arc < Self::CAPACITY && self.0 & (1u128 << arc) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, other: &ArcSubset) -> ArcSubset {
        ArcSubset(self.0 | other.0)
    }

    pub fn difference(&self, other: &ArcSubset) -> ArcSubset {
        ArcSubset(self.0 & !other.0)
    }

    /// Indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }
}

impl FromIterator<usize> for ArcSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ArcSubset::from_indices(iter)
    }
}

/// An undirected arc `e_{u,v}` with `u < v` and its probability of functioning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub u: usize,
    pub v: usize,
    pub up_prob: f64,
}

impl Arc {
    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{},{}", self.u, self.v)
    }
}

/// Where in the input a diagnostic points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    /// 1-based line of a text document.
    Line(usize),
    /// 1-based arc entry (JSON input or programmatic construction).
    Arc(usize),
    Header,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Line(l) => write!(f, "line {l}"),
            Location::Arc(a) => write!(f, "arc {a}"),
            Location::Header => f.write_str("header"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetworkError {
    #[error("{at}: malformed input: {message}")]
    Malformed { at: Location, message: String },
    #[error("invalid JSON network: {0}")]
    Json(String),
    #[error("header declares {expected} arcs but {found} were given")]
    ArcCount { expected: usize, found: usize },
    #[error("{at}: network needs at least 2 nodes, got {nodes}")]
    TooFewNodes { at: Location, nodes: usize },
    #[error("{at}: {arcs} arcs exceeds the supported maximum of {max}", max = MAX_ARCS)]
    TooManyArcs { at: Location, arcs: usize },
    #[error("{at}: source must be node 1 and sink must be node {nodes}, got {source_node} and {sink_node}")]
    Terminals {
        at: Location,
        nodes: usize,
        source_node: usize,
        sink_node: usize,
    },
    #[error("{at}: node {node} is outside 1..={nodes}")]
    NodeOutOfRange {
        at: Location,
        node: usize,
        nodes: usize,
    },
    #[error("{at}: self-loop on node {node}")]
    SelfLoop { at: Location, node: usize },
    #[error("{at}: parallel arc e{u},{v} (first given at {first})")]
    ParallelArc {
        at: Location,
        first: Location,
        u: usize,
        v: usize,
    },
    #[error("{at}: probability {p} is outside [0, 1]")]
    ProbabilityOutOfRange { at: Location, p: f64 },
    #[error("network is disconnected: node {node} cannot be reached from node 1")]
    Disconnected { node: usize },
}

impl NetworkError {
    /// True when the document could not be read as a network at all, false
    /// when it was read but violates a network invariant.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            NetworkError::Malformed { .. } | NetworkError::Json(_) | NetworkError::ArcCount { .. }
        )
    }
}

/// An undirected binary-state network with source node 1 and sink node `n`.
///
/// Nodes are numbered `1..=n`. Arcs keep the order in which they were given;
/// arc indices elsewhere in the crate are 0-based positions in that order.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    node_count: usize,
    arcs: Vec<Arc>,
    // adjacency[node] = (neighbour, arc index); index 0 unused
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Network {
    /// Builds a network from `(u, v, p)` triples, validating every invariant.
    /// Endpoints may be given in either order.
    pub fn new(node_count: usize, arcs: &[(usize, usize, f64)]) -> Result<Self, NetworkError> {
        let located: Vec<_> = arcs
            .iter()
            .enumerate()
            .map(|(i, &a)| (Location::Arc(i + 1), a))
            .collect();
        Self::build(node_count, Location::Header, &located)
    }

    fn build(
        node_count: usize,
        header: Location,
        arcs: &[(Location, (usize, usize, f64))],
    ) -> Result<Self, NetworkError> {
        if node_count < 2 {
            return Err(NetworkError::TooFewNodes {
                at: header,
                nodes: node_count,
            });
        }
        if arcs.len() > MAX_ARCS {
            return Err(NetworkError::TooManyArcs {
                at: header,
                arcs: arcs.len(),
            });
        }
        let mut seen: HashMap<(usize, usize), Location> = HashMap::new();
        let mut list = Vec::with_capacity(arcs.len());
        for &(at, (a, b, p)) in arcs {
            for node in [a, b] {
                if node == 0 || node > node_count {
                    return Err(NetworkError::NodeOutOfRange {
                        at,
                        node,
                        nodes: node_count,
                    });
                }
            }
            if a == b {
                return Err(NetworkError::SelfLoop { at, node: a });
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(NetworkError::ProbabilityOutOfRange { at, p });
            }
            let (u, v) = (a.min(b), a.max(b));
            if let Some(&first) = seen.get(&(u, v)) {
                return Err(NetworkError::ParallelArc { at, first, u, v });
            }
            seen.insert((u, v), at);
            list.push(Arc { u, v, up_prob: p });
        }

        let mut adjacency = vec![Vec::new(); node_count + 1];
        for (i, arc) in list.iter().enumerate() {
            adjacency[arc.u].push((arc.v, i));
            adjacency[arc.v].push((arc.u, i));
        }
        let net = Network {
            node_count,
            arcs: list,
            adjacency,
        };
        let reached = net.reachable(net.source(), &ArcSubset::full(net.arc_count()));
        if let Some(node) = (1..=node_count).find(|&v| !reached[v]) {
            return Err(NetworkError::Disconnected { node });
        }
        Ok(net)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, index: usize) -> &Arc {
        &self.arcs[index]
    }

    pub fn source(&self) -> usize {
        1
    }

    pub fn sink(&self) -> usize {
        self.node_count
    }

    pub fn up_prob(&self, arc: usize) -> f64 {
        self.arcs[arc].up_prob
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency.get(node).map_or(0, Vec::len)
    }

    /// `(neighbour, arc index)` pairs incident to `node`, in arc order.
    pub fn incident(&self, node: usize) -> &[(usize, usize)] {
        &self.adjacency[node]
    }

    /// Index of the arc joining `a` and `b`, in either orientation.
    pub fn find_arc(&self, a: usize, b: usize) -> Option<usize> {
        let (u, v) = (a.min(b), a.max(b));
        self.arcs.iter().position(|arc| arc.u == u && arc.v == v)
    }

    /// Nodes reachable from `start` using only arcs in `up`; indexed by node id.
    pub fn reachable(&self, start: usize, up: &ArcSubset) -> Vec<bool> {
        let mut seen = vec![false; self.node_count + 1];
        let mut queue = std::collections::VecDeque::new();
        seen[start] = true;
        queue.push_back(start);
        while let Some(node) = queue.pop_front() {
            for &(next, arc) in &self.adjacency[node] {
                if !seen[next] && up.contains(arc) {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
        seen
    }

    /// Whether the functioning arcs `up` contain a source-sink path.
    pub fn st_connected(&self, up: &ArcSubset) -> bool {
        self.reachable(self.source(), up)[self.sink()]
    }

    /// Parses the text or JSON network format. A document whose first
    /// non-blank character is `{` is read as JSON.
    pub fn parse(text: &str) -> Result<Self, NetworkError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_text(text)
        }
    }

    fn parse_text(text: &str) -> Result<Self, NetworkError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let Some((header_line, header)) = lines.next() else {
            return Err(NetworkError::Malformed {
                at: Location::Line(1),
                message: "empty document".into(),
            });
        };
        let at = Location::Line(header_line);
        let fields = parse_fields::<usize>(header, 4, at, "header `n m s t`")?;
        let (n, m, s, t) = (fields[0], fields[1], fields[2], fields[3]);
        if s != 1 || t != n {
            return Err(NetworkError::Terminals {
                at,
                nodes: n,
                source_node: s,
                sink_node: t,
            });
        }

        let mut arcs = Vec::with_capacity(m.min(MAX_ARCS + 1));
        for (line, body) in lines {
            let at = Location::Line(line);
            let tokens: Vec<&str> = body.split_whitespace().collect();
            if tokens.len() != 3 {
                return Err(NetworkError::Malformed {
                    at,
                    message: format!("expected `u v p`, found {} fields", tokens.len()),
                });
            }
            let u = parse_token::<usize>(tokens[0], at, "node")?;
            let v = parse_token::<usize>(tokens[1], at, "node")?;
            let p = parse_token::<f64>(tokens[2], at, "probability")?;
            arcs.push((at, (u, v, p)));
        }
        if arcs.len() != m {
            return Err(NetworkError::ArcCount {
                expected: m,
                found: arcs.len(),
            });
        }
        Self::build(n, at, &arcs)
    }

    fn parse_json(text: &str) -> Result<Self, NetworkError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct JsonArc {
            u: usize,
            v: usize,
            p: f64,
        }
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct JsonNetwork {
            nodes: usize,
            source: usize,
            sink: usize,
            arcs: Vec<JsonArc>,
        }
        let doc: JsonNetwork =
            serde_json::from_str(text).map_err(|e| NetworkError::Json(e.to_string()))?;
        if doc.source != 1 || doc.sink != doc.nodes {
            return Err(NetworkError::Terminals {
                at: Location::Header,
                nodes: doc.nodes,
                source_node: doc.source,
                sink_node: doc.sink,
            });
        }
        let arcs: Vec<_> = doc
            .arcs
            .iter()
            .enumerate()
            .map(|(i, a)| (Location::Arc(i + 1), (a.u, a.v, a.p)))
            .collect();
        Self::build(doc.nodes, Location::Header, &arcs)
    }

    /// Renders the text format; parsing the output yields an identical network.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {} {}\n",
            self.node_count,
            self.arcs.len(),
            self.source(),
            self.sink()
        );
        for arc in &self.arcs {
            out.push_str(&format!("{} {} {:?}\n", arc.u, arc.v, arc.up_prob));
        }
        out
    }

    /// A copy of the network with every arc probability replaced.
    pub fn with_probabilities(&self, probs: &[f64]) -> Result<Self, NetworkError> {
        assert_eq!(probs.len(), self.arcs.len(), "one probability per arc");
        let triples: Vec<_> = self
            .arcs
            .iter()
            .zip(probs)
            .map(|(a, &p)| (a.u, a.v, p))
            .collect();
        Self::new(self.node_count, &triples)
    }
}

fn parse_token<T: std::str::FromStr>(
    token: &str,
    at: Location,
    what: &str,
) -> Result<T, NetworkError> {
    token.parse().map_err(|_| NetworkError::Malformed {
        at,
        message: format!("`{token}` is not a valid {what}"),
    })
}

fn parse_fields<T: std::str::FromStr>(
    line: &str,
    count: usize,
    at: Location,
    what: &str,
) -> Result<Vec<T>, NetworkError> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != count {
        return Err(NetworkError::Malformed {
            at,
            message: format!("expected {what}, found {} fields", tokens.len()),
        });
    }
    tokens
        .iter()
        .map(|t| parse_token(t, at, "integer"))
        .collect()
}
