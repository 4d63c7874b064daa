//! Four-qubit product states and the labels they reach.
//!
//! Up to SLOCC every one-qubit factor is `|0⟩`, every two-qubit factor is
//! `|00⟩` or an EPR pair, and every three-qubit factor is one of
//! `|000⟩`, `|0⟩⊗EPR` (three placements), GHZ or W. Since the labels depend
//! on the qubit split, every placement of the factors is enumerated.

use std::collections::BTreeSet;

use crate::config::RunConfig;
use crate::partitions::{JordanLabel, SpectrumSignature};
use crate::scalar::Scalar;
use crate::tensor::StateVector;

use super::{classify_with, ClassifyError};

#[derive(Debug, Clone)]
pub struct ProductLabelSets {
    pub spectrum: BTreeSet<SpectrumSignature>,
    pub jordan: BTreeSet<JordanLabel>,
}

fn terms(n: usize, labels: &[&str]) -> StateVector {
    let t: Vec<(&str, Scalar)> = labels.iter().map(|l| (*l, Scalar::one())).collect();
    StateVector::from_terms(n, &t).expect("nonzero")
}

fn two_qubit_factors() -> Vec<(&'static str, StateVector)> {
    vec![("|00>", terms(2, &["00"])), ("EPR", terms(2, &["00", "11"]))]
}

fn three_qubit_factors() -> Vec<(&'static str, StateVector)> {
    vec![
        ("|000>", terms(3, &["000"])),
        ("EPR|0>", terms(3, &["000", "110"])),
        ("EPR(13)|0>", terms(3, &["000", "101"])),
        ("|0>EPR", terms(3, &["000", "011"])),
        ("GHZ3", terms(3, &["000", "111"])),
        ("W3", terms(3, &["001", "010", "100"])),
    ]
}

/// Every biseparable four-qubit representative, with a short description.
pub fn product_states() -> Vec<(String, StateVector)> {
    let zero = terms(1, &["0"]);
    let mut out = Vec::new();
    for single in 1..=4usize {
        let rest: Vec<usize> = (1..=4).filter(|&q| q != single).collect();
        for (name, s3) in three_qubit_factors() {
            let st = StateVector::product_on(&[(&zero, &[single]), (&s3, &rest)]).expect("valid placement");
            out.push((format!("|0>_{single} ⊗ {name} on {rest:?}"), st));
        }
    }
    for (a, b) in [([1usize, 2], [3usize, 4]), ([1, 3], [2, 4]), ([1, 4], [2, 3])] {
        for (na, sa) in two_qubit_factors() {
            for (nb, sb) in two_qubit_factors() {
                let st = StateVector::product_on(&[(&sa, &a), (&sb, &b)]).expect("valid placement");
                out.push((format!("{na} on {a:?} ⊗ {nb} on {b:?}"), st));
            }
        }
    }
    out
}

/// The sets of `Ξ` and `ϑ` values reached by four-qubit product states.
pub fn product_label_sets(config: &RunConfig) -> Result<ProductLabelSets, ClassifyError> {
    let mut spectrum = BTreeSet::new();
    let mut jordan = BTreeSet::new();
    for (_, state) in product_states() {
        let c = classify_with(&state, None, config)?;
        spectrum.insert(c.xi);
        jordan.insert(c.theta);
    }
    Ok(ProductLabelSets { spectrum, jordan })
}
