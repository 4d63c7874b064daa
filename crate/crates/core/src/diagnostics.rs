use std::fmt;

use serde::Serialize;

/// Something the pipeline noticed that may make a result untrustworthy.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    /// Eigensolver or rank-chain failure.
    Numerical { detail: String },
    /// Two eigenvalue clusters closer than ten clustering thresholds.
    ClusterAmbiguity { gap: f64, threshold: f64 },
    /// Float rank disagreed with the exact rank (the exact value was used).
    RankMismatch { matrix: String, float: usize, exact: usize },
    /// Nonzero-eigenvalue Jordan data could not be certified exactly.
    Uncertified { detail: String },
    /// A structural property of `Φ` failed.
    Property { property: String, detail: String },
}

impl Diagnostic {
    pub fn property(property: &str, detail: impl Into<String>) -> Self {
        Diagnostic::Property { property: property.to_string(), detail: detail.into() }
    }

    /// Whether the diagnostic downgrades a result to low confidence.
    pub fn is_fatal(&self) -> bool {
        !matches!(self, Diagnostic::RankMismatch { .. })
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Numerical { detail } => write!(f, "numerical: {detail}"),
            Diagnostic::ClusterAmbiguity { gap, threshold } => write!(
                f,
                "eigenvalue clusters only {gap:.3e} apart (threshold {threshold:.3e}); consider a different --tol-cluster"
            ),
            Diagnostic::RankMismatch { matrix, float, exact } => {
                write!(f, "float rank of {matrix} is {float} but exact rank is {exact}; consider a different --tol-rank")
            }
            Diagnostic::Uncertified { detail } => write!(f, "not certified exactly: {detail}"),
            Diagnostic::Property { property, detail } => write!(f, "{property} violated: {detail}"),
        }
    }
}
