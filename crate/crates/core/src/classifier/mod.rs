//! State → (Ξ, ϑ), plus inequivalence decisions and genuine-entanglement
//! detection built on those labels.

pub mod analysis;
pub mod products;
pub mod tables;
pub mod validate;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::RunConfig;
use crate::diagnostics::Diagnostic;
use crate::numkit::{EigenJordan, NumError};
use crate::partitions::{JordanLabel, Partition, SpectrumSignature};
use crate::phi::{build_phi, PhiError};
use crate::tensor::{coefficient_matrix, exact_coefficient_matrix, QubitSplit, StateVector, TensorError};

pub use analysis::{analyze, EigenPair, PhiAnalysis};
pub use products::{product_label_sets, product_states, ProductLabelSets};
pub use tables::{emit_tables, TableReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error("classification needs a multiple of 4 qubits, got {0}")]
    NotMultipleOfFour(usize),
    #[error("states have different qubit counts ({left} vs {right})")]
    ArityMismatch { left: usize, right: usize },
    #[error("the product-state label set is only built in for 4 qubits; supply one for {0} qubits")]
    ProductSetRequired(usize),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Phi(#[from] PhiError),
    #[error(transparent)]
    Numerical(#[from] NumError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Confidence {
    /// Ξ and the zero-eigenvalue structure came from exact arithmetic.
    Exact,
    Float,
    /// A structural check failed or the numerics were ambiguous.
    LowConfidence,
}

impl fmt::Display for Confidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Confidence::Exact => "EXACT",
            Confidence::Float => "FLOAT",
            Confidence::LowConfidence => "LOW_CONFIDENCE",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub xi: SpectrumSignature,
    pub theta: JordanLabel,
    /// Zero eigenvalue first (if present), then `+λ, −λ` for each pair.
    pub eigen_report: Vec<EigenJordan>,
    pub confidence: Confidence,
    pub split: QubitSplit,
    pub diagnostics: Vec<Diagnostic>,
}

/// JSON shape of a classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationJson {
    pub xi: XiJson,
    pub theta: ThetaJson,
    pub confidence: Confidence,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XiJson {
    pub k: usize,
    pub ells: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaJson {
    pub tau: Vec<usize>,
    pub pis: Vec<Vec<usize>>,
}

impl ClassificationJson {
    /// Re-sorts every partition and the multiset of `pis`.
    pub fn canonicalize(&self) -> Self {
        let theta = JordanLabel::new(
            Partition::new(self.theta.tau.iter().copied()),
            self.theta.pis.iter().map(|p| Partition::new(p.iter().copied())).collect(),
        );
        let xi = SpectrumSignature::new(self.xi.k, Partition::new(self.xi.ells.iter().copied()));
        ClassificationJson::from_labels(&xi, &theta, self.confidence)
    }

    fn from_labels(xi: &SpectrumSignature, theta: &JordanLabel, confidence: Confidence) -> Self {
        ClassificationJson {
            xi: XiJson { k: xi.k, ells: xi.ells.parts().to_vec() },
            theta: ThetaJson {
                tau: theta.tau.parts().to_vec(),
                pis: theta.pis.iter().map(|p| p.parts().to_vec()).collect(),
            },
            confidence,
        }
    }

    pub fn to_string_canonical(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

impl Classification {
    pub fn to_json(&self) -> ClassificationJson {
        ClassificationJson::from_labels(&self.xi, &self.theta, self.confidence)
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string_canonical()
    }

    pub fn fatal_diagnostics(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.is_fatal())
    }

    /// Multi-line human-readable report.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("split:      {}\n", self.split));
        s.push_str(&format!("Xi:         {}\n", self.xi));
        s.push_str(&format!("theta:      {}\n", self.theta));
        s.push_str(&format!("confidence: {}\n", self.confidence));
        s.push_str("eigenvalues:\n");
        for e in &self.eigen_report {
            s.push_str(&format!(
                "  λ = {:+.6}{:+.6}i  AM {}  GM {}  blocks {}\n",
                e.lambda.re,
                e.lambda.im,
                e.algebraic_multiplicity,
                e.geometric_multiplicity(),
                e.segre
            ));
        }
        for d in &self.diagnostics {
            s.push_str(&format!("note: {d}\n"));
        }
        s
    }
}

fn four_n_qubits(state: &StateVector) -> Result<(), ClassifyError> {
    let q = state.num_qubits();
    if q == 0 || q % 4 != 0 {
        return Err(ClassifyError::NotMultipleOfFour(q));
    }
    Ok(())
}

/// Classification with the default split and configuration.
pub fn classify(state: &StateVector) -> Result<Classification, ClassifyError> {
    classify_with(state, None, &RunConfig::default())
}

pub fn classify_with(state: &StateVector, split: Option<&QubitSplit>, config: &RunConfig) -> Result<Classification, ClassifyError> {
    four_n_qubits(state)?;
    let split = match split {
        Some(s) => s.clone(),
        None => QubitSplit::default_for(state.num_qubits())?,
    };
    let c = coefficient_matrix(state, &split)?;
    let c_exact = exact_coefficient_matrix(state, &split)?;
    let input = build_phi(&c, c_exact.as_ref())?;
    let analysis = analyze(input, config)?;
    Ok(finish(analysis, split, config))
}

fn finish(analysis: PhiAnalysis, split: QubitSplit, config: &RunConfig) -> Classification {
    let tau = analysis.zero.as_ref().map_or_else(Partition::empty, |z| z.segre.clone());
    let theta = JordanLabel::new(tau, analysis.pairs.iter().map(|p| p.plus.segre.clone()).collect());
    let xi = validate::direct_xi(&analysis);

    let mut diagnostics = analysis.diagnostics.clone();
    diagnostics.extend(validate::validate(&analysis, &theta, config.tol_rank));

    let fatal = diagnostics.iter().any(Diagnostic::is_fatal);
    let confidence = match (fatal, analysis.exact && analysis.input.is_exact()) {
        (true, _) => Confidence::LowConfidence,
        (false, true) => Confidence::Exact,
        (false, false) => Confidence::Float,
    };
    let mut eigen_report: Vec<EigenJordan> = analysis.zero.iter().cloned().collect();
    for p in &analysis.pairs {
        eigen_report.push(p.plus.clone());
        eigen_report.push(p.minus.clone());
    }
    Classification { xi, theta, eigen_report, confidence, split, diagnostics }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Inequivalent,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Witness {
    Xi,
    Theta,
    None,
}

#[derive(Debug, Clone)]
pub struct ComparisonVerdict {
    pub verdict: Verdict,
    pub witness: Witness,
    pub left: Classification,
    pub right: Classification,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Inequivalent => "INEQUIVALENT",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Witness::Xi => "xi",
            Witness::Theta => "theta",
            Witness::None => "none",
        })
    }
}

/// Different labels prove SLOCC inequivalence; equal labels prove nothing.
pub fn compare(s1: &StateVector, s2: &StateVector, split: Option<&QubitSplit>, config: &RunConfig) -> Result<ComparisonVerdict, ClassifyError> {
    if s1.num_qubits() != s2.num_qubits() {
        return Err(ClassifyError::ArityMismatch { left: s1.num_qubits(), right: s2.num_qubits() });
    }
    let left = classify_with(s1, split, config)?;
    let right = classify_with(s2, split, config)?;
    let witness = if left.xi != right.xi {
        Witness::Xi
    } else if left.theta != right.theta {
        Witness::Theta
    } else {
        Witness::None
    };
    let verdict = if witness == Witness::None { Verdict::Inconclusive } else { Verdict::Inequivalent };
    Ok(ComparisonVerdict { verdict, witness, left, right })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EntanglementVerdict {
    Genuine,
    Inconclusive,
}

impl fmt::Display for EntanglementVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntanglementVerdict::Genuine => "GENUINE",
            EntanglementVerdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// GENUINE when `ϑ` is outside the labels reachable by product states.
/// For more than four qubits the caller supplies that label set.
pub fn genuine_entanglement(
    state: &StateVector,
    product_labels: Option<&BTreeSet<JordanLabel>>,
    config: &RunConfig,
) -> Result<(EntanglementVerdict, Classification), ClassifyError> {
    let c = classify_with(state, None, config)?;
    let owned;
    let set = match product_labels {
        Some(s) => s,
        None if state.num_qubits() == 4 => {
            owned = product_label_sets(config)?.jordan;
            &owned
        }
        None => return Err(ClassifyError::ProductSetRequired(state.num_qubits())),
    };
    let verdict = if set.contains(&c.theta) { EntanglementVerdict::Inconclusive } else { EntanglementVerdict::Genuine };
    Ok((verdict, c))
}
