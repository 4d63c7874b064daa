//! Jordan structure from rank chains.
//!
//! For an eigenvalue `λ` of `M`, the Weyr sequence `d_j = dim ker (M − λI)^j`
//! determines every block size: `χ_j = d_j − d_{j−1}` counts the blocks of size
//! at least `j`, so the Segre partition is the conjugate of `(χ_1, χ_2, …)`.

use serde::Serialize;

use super::cluster::EigenCluster;
use super::matrix::{ComplexMatrix, C64};
use super::qr::nullspace;
use super::NumError;
use crate::partitions::Partition;

/// Segre partition (block sizes) from a Weyr sequence `d_1 ≤ d_2 ≤ …`.
pub fn segre_from_weyr(weyr: &[usize]) -> Partition {
    let chi = weyr_differences(weyr);
    Partition::new(chi).conjugate()
}

/// `χ_j = d_j − d_{j−1}` with `d_0 = 0`.
pub fn weyr_differences(weyr: &[usize]) -> Vec<usize> {
    let mut prev = 0;
    weyr.iter()
        .map(|&d| {
            let chi = d.saturating_sub(prev);
            prev = d;
            chi
        })
        .collect()
}

/// Weyr sequence recovered from a Segre partition (inverse of
/// [`segre_from_weyr`]).
pub fn weyr_from_segre(segre: &Partition) -> Vec<usize> {
    let mut acc = 0;
    segre
        .conjugate()
        .parts()
        .iter()
        .map(|&c| {
            acc += c;
            acc
        })
        .collect()
}

/// Kernel chain of `M − λI` with the orthonormal bases kept for reuse.
#[derive(Debug, Clone)]
pub struct WeyrChain {
    pub weyr: Vec<usize>,
    /// Orthonormal basis of `ker (M − λI)` (the eigenvectors).
    pub eigenvectors: ComplexMatrix,
}

/// `Z_j = null((I − Z_{j−1} Z_{j−1}^H)(M − λI))`, stopping when `d_j` reaches
/// `am` (if known) or stops growing.
///
/// Singular directions are those below `tol_rank · ‖M − λI‖_F`.
pub fn weyr_chain(m: &ComplexMatrix, lambda: C64, am: Option<usize>, tol_rank: f64) -> Result<WeyrChain, NumError> {
    if !m.is_square() {
        return Err(NumError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let shifted = m.shift(lambda);
    let abs_tol = tol_rank * shifted.frobenius_norm().max(f64::MIN_POSITIVE);

    let mut weyr: Vec<usize> = Vec::new();
    let mut basis = ComplexMatrix::zeros(n, 0);
    let mut eigenvectors = ComplexMatrix::zeros(n, 0);
    loop {
        let projected = if basis.cols() == 0 {
            shifted.clone()
        } else {
            let proj = &basis * &basis.adjoint();
            &(&ComplexMatrix::identity(n) - &proj) * &shifted
        };
        let next = nullspace(&projected, abs_tol);
        let d = next.cols();
        let prev = weyr.last().copied().unwrap_or(0);
        if weyr.is_empty() {
            eigenvectors = next.clone();
        }
        if d < prev {
            weyr.push(d);
            return Err(NumError::WeyrInconsistent {
                lambda,
                weyr,
                am,
                reason: "kernel dimension decreased".into(),
            });
        }
        if d == prev {
            break;
        }
        weyr.push(d);
        basis = next;
        if am == Some(d) || d == n {
            break;
        }
        if let Some(a) = am {
            if d > a {
                return Err(NumError::WeyrInconsistent {
                    lambda,
                    weyr,
                    am,
                    reason: "kernel dimension exceeds the algebraic multiplicity".into(),
                });
            }
        }
    }
    if let Some(a) = am {
        if weyr.last().copied().unwrap_or(0) != a {
            return Err(NumError::WeyrInconsistent {
                lambda,
                weyr,
                am,
                reason: "kernel chain stalled before the algebraic multiplicity".into(),
            });
        }
    }
    Ok(WeyrChain { weyr, eigenvectors })
}

/// Per-eigenvalue Jordan data.
#[derive(Debug, Clone, Serialize)]
pub struct EigenJordan {
    #[serde(serialize_with = "crate::numkit::serialize_c64")]
    pub lambda: C64,
    pub algebraic_multiplicity: usize,
    pub weyr: Vec<usize>,
    pub segre: Partition,
}

impl EigenJordan {
    pub fn from_weyr(lambda: C64, algebraic_multiplicity: usize, weyr: Vec<usize>) -> Self {
        let segre = segre_from_weyr(&weyr);
        EigenJordan { lambda, algebraic_multiplicity, weyr, segre }
    }

    pub fn geometric_multiplicity(&self) -> usize {
        self.weyr.first().copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct JordanStructure {
    pub eigenvalues: Vec<EigenJordan>,
}

impl JordanStructure {
    pub fn dimension(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.algebraic_multiplicity).sum()
    }
}

/// Jordan data for every cluster of `M`'s eigenvalues.
pub fn jordan_structure(m: &ComplexMatrix, clusters: &[EigenCluster], tol_rank: f64) -> Result<JordanStructure, NumError> {
    let total: usize = clusters.iter().map(|c| c.algebraic_multiplicity).sum();
    if total != m.rows() {
        return Err(NumError::DimensionMismatch { expected: m.rows(), found: total });
    }
    let eigenvalues = clusters
        .iter()
        .map(|c| {
            let chain = weyr_chain(m, c.representative, Some(c.algebraic_multiplicity), tol_rank)?;
            Ok(EigenJordan::from_weyr(c.representative, c.algebraic_multiplicity, chain.weyr))
        })
        .collect::<Result<Vec<_>, NumError>>()?;
    Ok(JordanStructure { eigenvalues })
}
