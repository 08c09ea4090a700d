//! State vectors, prefixes and the three-valued prefix verdict.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Network;
use crate::labeling::Labeling;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateError {
    #[error("prefix of length {len} exceeds the {arcs} labeled arcs")]
    TooLong { len: usize, arcs: usize },
    #[error("state vector has length {len}, expected {arcs}")]
    WrongLength { len: usize, arcs: usize },
    #[error("`{0}` is not a bit string")]
    NotBits(String),
}

fn write_bits(bits: &[bool], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for &b in bits {
        f.write_str(if b { "1" } else { "0" })?;
    }
    Ok(())
}

fn parse_bits(s: &str) -> Result<Vec<bool>, StateError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(StateError::NotBits(s.to_string())),
        })
        .collect()
}

fn bits_value(bits: &[bool]) -> u64 {
    debug_assert!(bits.len() <= 64);
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as u64)
}

/// The first `k` coordinates of a state vector, `0 <= k <= m`.
///
/// Prefixes order and compare lexicographically, which for equal lengths is
/// the order of their numeric values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Prefix {
    bits: Vec<bool>,
}

impl Prefix {
    pub fn new(bits: Vec<bool>) -> Self {
        Prefix { bits }
    }

    pub fn empty() -> Self {
        Prefix::default()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Big-endian value of the prefix bits alone.
    pub fn value(&self) -> u64 {
        bits_value(&self.bits)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// This prefix with one more coordinate.
    pub fn extended(&self, bit: bool) -> Prefix {
        let mut bits = self.bits.clone();
        bits.push(bit);
        Prefix { bits }
    }

    /// Next prefix of the same length in numeric order, or `None` after
    /// the all-ones prefix.
    pub fn successor(&self) -> Option<Prefix> {
        let last_zero = self.bits.iter().rposition(|&b| !b)?;
        let mut bits = self.bits.clone();
        bits[last_zero] = true;
        bits[last_zero + 1..].fill(false);
        Some(Prefix { bits })
    }

    /// Smallest full vector with this prefix (free coordinates all 0).
    pub fn zero_fill(&self, m: usize) -> StateVector {
        let mut bits = self.bits.clone();
        bits.resize(m, false);
        StateVector { bits }
    }

    /// Number of full length-`m` vectors that extend this prefix.
    pub fn extension_count(&self, m: usize) -> u64 {
        1u64 << (m - self.len())
    }

    /// 1-based indices `(first, last)` of the full vectors extending this
    /// prefix, where a vector's index is its numeric value plus one.
    pub fn index_range(&self, m: usize) -> (u64, u64) {
        let first = (self.value() << (m - self.len())) + 1;
        (first, first + self.extension_count(m) - 1)
    }
}

impl fmt::Display for Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(&self.bits, f)
    }
}

impl FromStr for Prefix {
    type Err = StateError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_bits(s).map(Prefix::new)
    }
}

impl From<StateVector> for Prefix {
    fn from(x: StateVector) -> Self {
        Prefix { bits: x.bits }
    }
}

/// A full assignment of states to the `m` labeled arcs. Coordinate `i` is
/// the state of the arc with label `i + 1`; coordinate 0 is the most
/// significant bit of the vector's numeric value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateVector {
    bits: Vec<bool>,
}

impl StateVector {
    pub fn new(bits: Vec<bool>) -> Self {
        StateVector { bits }
    }

    pub fn zero(m: usize) -> Self {
        StateVector {
            bits: vec![false; m],
        }
    }

    pub fn one(m: usize) -> Self {
        StateVector {
            bits: vec![true; m],
        }
    }

    /// The length-`m` vector with numeric value `value`.
    pub fn from_value(value: u64, m: usize) -> Self {
        assert!(
            m <= 64 && (m == 64 || value >> m == 0),
            "{value} does not fit in {m} bits"
        );
        StateVector {
            bits: (0..m).map(|i| (value >> (m - 1 - i)) & 1 == 1).collect(),
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn value(&self) -> u64 {
        bits_value(&self.bits)
    }

    /// 1-based position in enumeration order.
    pub fn index(&self) -> u64 {
        self.value() + 1
    }

    pub fn prefix(&self, k: usize) -> Prefix {
        Prefix::new(self.bits[..k].to_vec())
    }

    /// Next vector in enumeration order (binary increment, last coordinate
    /// least significant), or `None` after the all-ones vector.
    pub fn successor(&self) -> Option<StateVector> {
        let next = Prefix::new(self.bits.clone()).successor()?;
        Some(StateVector { bits: next.bits })
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(&self.bits, f)
    }
}

impl FromStr for StateVector {
    type Err = StateError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_bits(s).map(StateVector::new)
    }
}

impl Serialize for StateVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for Prefix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Prefix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The BAT successor of `x`: its binary increment, or `None` on overflow.
pub fn bat_successor(x: &StateVector) -> Option<StateVector> {
    x.successor()
}

/// Connectivity verdict for every full vector extending a prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PrefixStatus {
    /// The prefix's up arcs already join source and sink.
    Connected,
    /// Source and sink stay apart even with every free arc functioning.
    Disconnected,
    Undetermined,
}

impl PrefixStatus {
    pub fn is_determined(self) -> bool {
        self != PrefixStatus::Undetermined
    }
}

/// Classifies a prefix under the given labeling.
///
/// Connected when the up arcs of the prefix contain a source-sink path;
/// otherwise Disconnected when the up arcs together with every arc beyond
/// the prefix still do not; otherwise Undetermined.
pub fn prefix_status(
    net: &Network,
    lab: &Labeling,
    bits: &[bool],
) -> Result<PrefixStatus, StateError> {
    let mut checks = 0;
    classify(net, lab, bits, &mut checks)
}

/// [`prefix_status`] that also counts the connectivity searches it runs.
pub(crate) fn classify(
    net: &Network,
    lab: &Labeling,
    bits: &[bool],
    checks: &mut u64,
) -> Result<PrefixStatus, StateError> {
    if bits.len() > lab.len() {
        return Err(StateError::TooLong {
            len: bits.len(),
            arcs: lab.len(),
        });
    }
    let up = lab.up_set(bits);
    *checks += 1;
    if net.st_connected(&up) {
        return Ok(PrefixStatus::Connected);
    }
    if bits.len() == lab.len() {
        return Ok(PrefixStatus::Disconnected);
    }
    *checks += 1;
    if !net.st_connected(&up.union(&lab.free_set(bits.len()))) {
        return Ok(PrefixStatus::Disconnected);
    }
    Ok(PrefixStatus::Undetermined)
}
