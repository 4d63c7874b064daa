//! Construction of `Γ = U C U†` and `Φ = [[0, Γ], [Γᵗ, 0]]`.
//!
//! `U = T^{⊗n}` with `T` the 4×4 unitary below. Since `√2·T` has Gaussian
//! integer entries, `Γ = 2^{−n} · G C G†` with `G = (√2 T)^{⊗n}`, so an exact
//! coefficient matrix gives an exact `Γ`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::numkit::exact::{gq, ExactMatrix, GaussRational};
use crate::numkit::{ComplexMatrix, C64};
use crate::tensor::{det_products, LocalOperatorSet, QubitSplit};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhiError {
    #[error("coefficient matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("coefficient matrix side {0} is not 4^n for n >= 1")]
    NotPowerOfFour(usize),
}

/// `√2·T`, the Gaussian-integer form of `T`.
pub fn t_gaussian() -> ExactMatrix {
    let z = || gq(0, 0);
    ExactMatrix::from_rows(vec![
        vec![gq(1, 0), z(), z(), gq(1, 0)],
        vec![z(), gq(0, 1), gq(0, 1), z()],
        vec![z(), gq(-1, 0), gq(1, 0), z()],
        vec![gq(0, 1), z(), z(), gq(0, -1)],
    ])
}

pub fn t_matrix() -> ComplexMatrix {
    t_gaussian().to_float().scale(C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0))
}

/// `υ = [[0, 1], [−1, 0]]`.
pub fn upsilon() -> ComplexMatrix {
    ComplexMatrix::from_real(&[&[0.0, 1.0], &[-1.0, 0.0]])
}

/// `U = T^{⊗n}`.
pub fn u_matrix(n: usize) -> ComplexMatrix {
    t_matrix().kron_power(n)
}

/// `(√2)^n·U`, exactly.
pub fn u_gaussian(n: usize) -> ExactMatrix {
    let g = t_gaussian();
    (0..n).fold(ExactMatrix::identity(1), |acc, _| acc.kron(&g))
}

/// `Γ`, `Φ` and their exact mirrors when the input was exact.
#[derive(Debug, Clone)]
pub struct PhiInput {
    pub n: usize,
    pub gamma: ComplexMatrix,
    pub phi: ComplexMatrix,
    pub gamma_exact: Option<ExactMatrix>,
    pub phi_exact: Option<ExactMatrix>,
}

impl PhiInput {
    pub fn is_exact(&self) -> bool {
        self.gamma_exact.is_some()
    }

    /// `2^{2n}`, the side of `Γ`.
    pub fn half_dimension(&self) -> usize {
        self.gamma.rows()
    }
}

pub fn phi_from_gamma(gamma: &ComplexMatrix) -> ComplexMatrix {
    let z = ComplexMatrix::zeros(gamma.rows(), gamma.cols());
    ComplexMatrix::block(&z, gamma, &gamma.transpose(), &z)
}

pub fn exact_phi_from_gamma(gamma: &ExactMatrix) -> ExactMatrix {
    let z = ExactMatrix::zeros(gamma.rows(), gamma.cols());
    ExactMatrix::block(&z, gamma, &gamma.transpose(), &z)
}

fn power_of_four(side: usize) -> Option<usize> {
    let mut n = 0;
    let mut s = side;
    while s > 1 && s % 4 == 0 {
        s /= 4;
        n += 1;
    }
    (s == 1 && n >= 1).then_some(n)
}

pub fn build_phi(c: &ComplexMatrix, exact: Option<&ExactMatrix>) -> Result<PhiInput, PhiError> {
    if !c.is_square() {
        return Err(PhiError::NotSquare { rows: c.rows(), cols: c.cols() });
    }
    let n = power_of_four(c.rows()).ok_or(PhiError::NotPowerOfFour(c.rows()))?;
    let u = u_matrix(n);
    let gamma = &(&u * c) * &u.adjoint();
    let gamma_exact = exact.map(|ce| {
        let g = u_gaussian(n);
        let scale = GaussRational::new(BigRational::new(One::one(), num_bigint::BigInt::from(1u64 << n)), Zero::zero());
        (&(&g * ce) * &g.adjoint()).scale(&scale)
    });
    // The exact Γ is the better float source when it exists.
    let gamma = match &gamma_exact {
        Some(e) => e.to_float(),
        None => gamma,
    };
    let phi = phi_from_gamma(&gamma);
    let phi_exact = gamma_exact.as_ref().map(exact_phi_from_gamma);
    Ok(PhiInput { n, gamma, phi, gamma_exact, phi_exact })
}

/// Residuals of the orthogonality identities for one local-operator set.
#[derive(Debug, Clone, Serialize)]
pub struct AppendixAReport {
    #[serde(serialize_with = "crate::numkit::serialize_c64")]
    pub g: C64,
    #[serde(serialize_with = "crate::numkit::serialize_c64")]
    pub h: C64,
    /// Relative residuals of `Q₁Q₁ᵗ − gI`, `Q₁ᵗQ₁ − gI`, `Q₂Q₂ᵗ − hI`, `Q₂ᵗQ₂ − hI`.
    pub residuals: [f64; 4],
    pub tolerance: f64,
    pub passed: bool,
}

impl AppendixAReport {
    pub fn max_deviation(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

pub const APPENDIX_A_TOLERANCE: f64 = 1e-9;

/// `Q₁ = UΔ₁U†`, `Q₂ = UΔ₂U†` with `Δ₁` the row-qubit operators and `Δ₂` the
/// transposed column-qubit operators; checks `Q₁Q₁ᵗ = Q₁ᵗQ₁ = gI` and the same
/// for `Q₂` with `h`.
pub fn verify_appendix_a(ops: &LocalOperatorSet, split: &QubitSplit) -> AppendixAReport {
    let (g, h) = det_products(ops, split);
    let n = split.row_qubits().len() / 2;
    let u = u_matrix(n);
    let uh = u.adjoint();
    let delta1 = ops.kron_of(split.row_qubits());
    let delta2 = ops.kron_of(split.column_qubits()).transpose();
    let q1 = &(&u * &delta1) * &uh;
    let q2 = &(&u * &delta2) * &uh;
    let side = q1.rows();
    let rel = |m: &ComplexMatrix, s: C64| {
        let target = ComplexMatrix::identity(side).scale(s);
        m.distance(&target) / target.frobenius_norm()
    };
    let residuals = [
        rel(&(&q1 * &q1.transpose()), g),
        rel(&(&q1.transpose() * &q1), g),
        rel(&(&q2 * &q2.transpose()), h),
        rel(&(&q2.transpose() * &q2), h),
    ];
    let passed = residuals.iter().all(|&r| r <= APPENDIX_A_TOLERANCE);
    AppendixAReport { g, h, residuals, tolerance: APPENDIX_A_TOLERANCE, passed }
}

/// Largest entry of `Tυ^{⊗2}Tᵗ − I₄`.
pub fn t_upsilon_residual() -> f64 {
    let t = t_matrix();
    let lhs = &(&t * &upsilon().kron_power(2)) * &t.transpose();
    (&lhs - &ComplexMatrix::identity(4)).max_abs()
}

/// Largest entry of `U†U* − υ^{⊗2n}`.
pub fn u_upsilon_residual(n: usize) -> f64 {
    let u = u_matrix(n);
    let lhs = &u.adjoint() * &u.conj();
    (&lhs - &upsilon().kron_power(2 * n)).max_abs()
}
