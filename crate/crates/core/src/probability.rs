//! Occurrence probabilities of state vectors and prefixes.
//!
//! Arcs fail independently, so the probability of a vector is the product
//! of `p` for each functioning coordinate and `1 - p` for each failed one.
//! A prefix stands for every vector extending it; the free coordinates sum
//! out to 1 and only the fixed coordinates are multiplied. Products are
//! always taken in label order.

use crate::graph::Network;
use crate::labeling::Labeling;
use crate::state::{Prefix, StateError, StateVector};

fn product(net: &Network, lab: &Labeling, bits: &[bool]) -> f64 {
    bits.iter().enumerate().fold(1.0, |acc, (pos, &up)| {
        let p = net.up_prob(lab.arc_at(pos));
        acc * if up { p } else { 1.0 - p }
    })
}

/// Probability of the full vector `x`.
pub fn vector_prob(net: &Network, lab: &Labeling, x: &StateVector) -> Result<f64, StateError> {
    if x.len() != lab.len() {
        return Err(StateError::WrongLength {
            len: x.len(),
            arcs: lab.len(),
        });
    }
    Ok(product(net, lab, x.bits()))
}

/// Total probability of all full vectors extending `p`.
pub fn prefix_prob(net: &Network, lab: &Labeling, p: &Prefix) -> Result<f64, StateError> {
    if p.len() > lab.len() {
        return Err(StateError::TooLong {
            len: p.len(),
            arcs: lab.len(),
        });
    }
    Ok(product(net, lab, p.bits()))
}

/// `r^ones * (1 - r)^zeros`, the probability of any vector or prefix with
/// that many up and down coordinates when every arc works with probability `r`.
pub fn homogeneous_prob(r: f64, ones: usize, zeros: usize) -> f64 {
    r.powi(ones as i32) * (1.0 - r).powi(zeros as i32)
}

/// The common arc probability, if all arcs share one.
pub fn common_probability(net: &Network) -> Option<f64> {
    let first = net.arcs().first()?.up_prob;
    net.arcs()
        .iter()
        .all(|a| a.up_prob == first)
        .then_some(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const TOL: f64 = 1e-12;

    #[test]
    fn vector_probabilities() {
        let net = fixtures::bridge();
        let lab = fixtures::bridge_labeling(&net);
        let x: StateVector = "0101011".parse().unwrap();
        assert!((vector_prob(&net, &lab, &x).unwrap() - 0.0032768).abs() < TOL);
        let zero = StateVector::zero(7);
        assert!((vector_prob(&net, &lab, &zero).unwrap() - 0.0000128).abs() < TOL);
        assert!(vector_prob(&net, &lab, &"01".parse().unwrap()).is_err());
    }

    #[test]
    fn table_one_all_up() {
        let net = fixtures::bridge_heterogeneous();
        let lab = fixtures::bridge_labeling(&net);
        let expected: f64 = fixtures::HETEROGENEOUS_PROBABILITIES.iter().product();
        let got = vector_prob(&net, &lab, &StateVector::one(7)).unwrap();
        assert!((got - expected).abs() < TOL);
    }

    #[test]
    fn prefix_probabilities() {
        let net = fixtures::bridge();
        let lab = fixtures::bridge_labeling(&net);
        let p: Prefix = "01011".parse().unwrap();
        assert!((prefix_prob(&net, &lab, &p).unwrap() - 0.02048).abs() < TOL);
        assert_eq!(prefix_prob(&net, &lab, &Prefix::empty()).unwrap(), 1.0);
        let x: StateVector = "1101001".parse().unwrap();
        assert_eq!(
            prefix_prob(&net, &lab, &x.clone().into()).unwrap(),
            vector_prob(&net, &lab, &x).unwrap()
        );
        assert!(prefix_prob(&net, &lab, &Prefix::new(vec![true; 8])).is_err());
    }

    #[test]
    fn homogeneous_shortcut() {
        let net = fixtures::bridge();
        assert_eq!(common_probability(&net), Some(0.8));
        assert_eq!(common_probability(&fixtures::bridge_heterogeneous()), None);
        assert!((homogeneous_prob(0.8, 4, 3) - 0.0032768).abs() < TOL);
    }
}
