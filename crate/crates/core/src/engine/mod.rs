//! Reliability solvers and their reports.
//!
//! * [`brute_force_reliability`]: every full vector, by integer loop. The
//!   reference oracle.
//! * [`classic_bat_undirected`]: every full vector in binary-addition-tree
//!   order.
//! * [`classic_bat_directed`]: the same over the directed expansion.
//! * [`bounded_bat`]: skips the ranges below `X_FC` and above `X_LD` in
//!   closed form and resolves whole prefixes in between.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::state::{Prefix, PrefixStatus, StateVector};

mod bounded;
mod exhaustive;

pub use bounded::bounded_bat;
pub use exhaustive::{brute_force_reliability, classic_bat_directed, classic_bat_undirected};

/// Default limit on the number of coordinates an exhaustive method will
/// enumerate (`2^24` vectors).
pub const DEFAULT_CAP: usize = 24;

/// The bounded method still runs above this many labels, but warns.
pub const BOUNDED_WARN_LABELS: usize = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("{method} needs {arcs} coordinates, above the enumeration cap of {cap}")]
    CapExceeded {
        method: Method,
        arcs: usize,
        cap: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Bounded,
    ClassicUndirected,
    ClassicDirected,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Bounded,
        Method::ClassicUndirected,
        Method::ClassicDirected,
        Method::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Bounded => "bounded",
            Method::ClassicUndirected => "classic-undirected",
            Method::ClassicDirected => "classic-directed",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

/// What the bounded method accumulates between `X_FC` and `X_LD`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Sum disconnected mass `U`; reliability is `1 - U`.
    #[default]
    DisconnectedSum,
    /// Sum connected mass `C`; reliability is `C` plus the mass above `X_LD`.
    ConnectedSum,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::DisconnectedSum => "disconnected-sum",
            Mode::ConnectedSum => "connected-sum",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Mode::DisconnectedSum, Mode::ConnectedSum]
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown mode `{s}`"))
    }
}

/// A prefix whose every extension shares one connectivity verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolvedPrefix {
    pub bits: Prefix,
    pub status: PrefixStatus,
    pub prob: f64,
    /// 1-based index (numeric value + 1) of the first vector covered.
    pub first_index: u64,
    pub last_index: u64,
}

impl ResolvedPrefix {
    pub fn is_connected(&self) -> bool {
        self.status == PrefixStatus::Connected
    }

    pub fn vector_count(&self) -> u64 {
        self.last_index - self.first_index + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Counters {
    /// Full vectors whose verdict the enumeration established (skipped
    /// ranges of the bounded method are not included).
    pub full_vectors_covered: u64,
    /// Trace entries produced.
    pub prefixes_resolved: u64,
    /// Source-sink reachability searches run.
    pub connectivity_checks: u64,
}

/// Extra facts reported by the exhaustive methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSummary {
    pub vectors: u64,
    pub connected_vectors: u64,
    pub first_connected_index: Option<u64>,
    pub last_disconnected_index: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    pub reliability: f64,
    /// Total probability of disconnected vectors.
    pub u_mass: Option<f64>,
    pub x_fc: Option<StateVector>,
    pub x_ld: Option<StateVector>,
    /// Mass skipped below `X_FC` (bounded method).
    pub pre_mass: Option<f64>,
    /// Mass skipped above `X_LD` (bounded method).
    pub post_mass: Option<f64>,
    pub trace: Vec<ResolvedPrefix>,
    pub counters: Counters,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<EnumerationSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(rename = "elapsed_ms", serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

impl SolveReport {
    pub(crate) fn new(method: Method, reliability: f64) -> Self {
        SolveReport {
            method,
            mode: None,
            reliability,
            u_mass: None,
            x_fc: None,
            x_ld: None,
            pre_mass: None,
            post_mass: None,
            trace: Vec::new(),
            counters: Counters::default(),
            enumeration: None,
            warnings: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    /// The report as pretty-printed JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}
