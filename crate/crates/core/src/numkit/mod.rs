//! Dense complex linear algebra, written from scratch for the small matrices
//! this crate needs (dimension ≤ 64 is the supported range, larger works but
//! is slow).

pub mod cluster;
pub mod eigen;
pub mod exact;
pub mod jordan;
pub mod matrix;
pub mod poly;
pub mod qr;

use serde::Serializer;
use thiserror::Error;

pub use cluster::{cluster_eigenvalues, merge_defective, ClusterOutcome, EigenCluster};
pub use eigen::{eigenvalues, hessenberg};
pub use exact::{exact_rank, exact_weyr_at_zero, ExactMatrix, GaussInt, GaussRational};
pub use jordan::{jordan_structure, segre_from_weyr, weyr_chain, weyr_differences, EigenJordan, JordanStructure, WeyrChain};
pub use matrix::{vec_norm, ComplexMatrix, C64};
pub use poly::{charpoly, square_free_decomposition, Poly};
pub use qr::{cpqr, nullspace, rank};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("QR iteration did not converge after {iterations} sweeps (dimension {dimension})")]
    IterationCap { iterations: usize, dimension: usize },
    #[error(
        "inconsistent Weyr sequence {weyr:?} at λ = {lambda} (expected multiplicity {am:?}): {reason}; \
         try a larger --tol-rank or --tol-cluster"
    )]
    WeyrInconsistent { lambda: C64, weyr: Vec<usize>, am: Option<usize>, reason: String },
    #[error("clusters cover {found} eigenvalues but the matrix has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

pub(crate) fn serialize_c64<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&z.re)?;
    t.serialize_element(&z.im)?;
    t.end()
}

/// Numerical rank cross-checked against the exact rank when one is available.
/// Returns the trusted rank and, on disagreement, the float value.
pub fn rank_checked(m: &ComplexMatrix, exact: Option<&ExactMatrix>, tol: f64) -> (usize, Option<usize>) {
    let float = rank(m, tol);
    match exact {
        Some(e) => {
            let r = exact_rank(e);
            (r, (r != float).then_some(float))
        }
        None => (float, None),
    }
}
