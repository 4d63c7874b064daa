//! Randomized checks that the labels really are SLOCC invariants.
//!
//! A trial draws invertible local operators, moves the state, classifies both
//! copies and checks that the labels agree, that nonzero eigenvalues scale by
//! `±√(gh)`, that paired block sizes match, and that the orthogonality
//! identities behind the scaling hold for the drawn operators.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::{classify_with, Classification, ClassifyError, Confidence};
use crate::config::RunConfig;
use crate::diagnostics::Diagnostic;
use crate::numkit::{
    cluster_eigenvalues, eigenvalues, merge_defective, nullspace, serialize_c64, vec_norm, ComplexMatrix, EigenJordan,
    C64,
};
use crate::phi::{phi_from_gamma, verify_appendix_a, AppendixAReport};
use crate::tensor::{
    apply_local_operators, det_products, random_gauss_entry, random_invertible_local_ops, QubitSplit, StateVector,
};

/// Relative tolerance for `λ′ = ±√(gh)·λ`.
pub const SPECTRAL_RATIO_TOLERANCE: f64 = 1e-6;
/// Residual tolerance for the eigenvector map, relative to `‖W‖`.
pub const EIGVEC_MAP_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReport {
    pub seed: u64,
    pub state: String,
    #[serde(serialize_with = "serialize_c64")]
    pub g: C64,
    #[serde(serialize_with = "serialize_c64")]
    pub h: C64,
    /// Largest relative mismatch between `λ′` and the nearest of `±√(gh)·λ`.
    pub max_spectral_error: f64,
    pub xi_equal: bool,
    pub theta_equal: bool,
    /// Block sizes agree for every eigenvalue matched through `√(gh)`.
    pub segre_matched: bool,
    pub appendix_a: AppendixAReport,
    pub confidence: (Confidence, Confidence),
    /// Structural-property violations reported for either classification.
    pub property_violations: Vec<String>,
    pub failures: Vec<String>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Nonzero eigenvalues with their Jordan data, one entry per `±λ` pair taken
/// with positive real part (positive imaginary part on the imaginary axis).
fn nonzero_pairs(c: &Classification) -> Vec<&EigenJordan> {
    c.eigen_report
        .iter()
        .filter(|e| e.lambda.norm() > 0.0)
        .filter(|e| e.lambda.re > 0.0 || (e.lambda.re == 0.0 && e.lambda.im > 0.0))
        .collect()
}

/// Matches every eigenvalue `λ` of the original to `±s·λ` in the image.
/// Returns the worst relative error and whether block sizes agreed.
fn match_spectra(before: &Classification, after: &Classification, s: C64) -> (f64, bool, Vec<String>) {
    let source = nonzero_pairs(before);
    let mut target: Vec<Option<&EigenJordan>> = nonzero_pairs(after).into_iter().map(Some).collect();
    let scale = source.iter().map(|e| (e.lambda * s).norm()).fold(f64::MIN_POSITIVE, f64::max);
    let mut worst: f64 = 0.0;
    let mut segre_ok = true;
    let mut notes = Vec::new();
    if source.len() != target.len() {
        notes.push(format!("{} nonzero eigenvalue pairs before, {} after", source.len(), target.len()));
        return (f64::INFINITY, false, notes);
    }
    for e in source {
        let want = e.lambda * s;
        let best = target
            .iter()
            .enumerate()
            .filter_map(|(i, t)| t.map(|t| (i, (t.lambda - want).norm().min((t.lambda + want).norm()))))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        let Some((i, err)) = best else { break };
        let matched = target[i].take().expect("unmatched slot");
        worst = worst.max(err / scale);
        if matched.segre != e.segre || matched.algebraic_multiplicity != e.algebraic_multiplicity {
            segre_ok = false;
            notes.push(format!("λ = {} has blocks {} but its image {} has {}", e.lambda, e.segre, matched.lambda, matched.segre));
        }
    }
    (worst, segre_ok, notes)
}

/// One invariance trial with operators drawn from `seed`.
pub fn invariance_trial(state: &StateVector, seed: u64, config: &RunConfig) -> Result<InvarianceReport, ClassifyError> {
    let n = state.num_qubits();
    let ops = random_invertible_local_ops(n, seed, config.condition_cap);
    let moved = apply_local_operators(state, &ops)?;
    let split = QubitSplit::default_for(n)?;
    let before = classify_with(state, Some(&split), config)?;
    let after = classify_with(&moved, Some(&split), config)?;
    let (g, h) = det_products(&ops, &split);
    let appendix_a = verify_appendix_a(&ops, &split);

    let mut failures = Vec::new();
    let xi_equal = before.xi == after.xi;
    let theta_equal = before.theta == after.theta;
    if !xi_equal {
        failures.push(format!("Ξ changed: {} → {}", before.xi, after.xi));
    }
    if !theta_equal {
        failures.push(format!("ϑ changed: {} → {}", before.theta, after.theta));
    }
    let (max_spectral_error, segre_matched, notes) = match_spectra(&before, &after, (g * h).sqrt());
    failures.extend(notes);
    if max_spectral_error > SPECTRAL_RATIO_TOLERANCE {
        failures.push(format!("eigenvalues off the √(gh) map by {max_spectral_error:.3e} (relative)"));
    }
    if !appendix_a.passed {
        failures.push(format!("orthogonality residuals {:?} exceed {:.0e}", appendix_a.residuals, appendix_a.tolerance));
    }
    for (which, c) in [("original", &before), ("transformed", &after)] {
        if c.confidence == Confidence::LowConfidence {
            failures.push(format!("{which} state classified with low confidence"));
        }
    }
    let property_violations = before
        .diagnostics
        .iter()
        .chain(&after.diagnostics)
        .filter(|d| matches!(d, Diagnostic::Property { .. }))
        .map(|d| d.to_string())
        .collect();
    Ok(InvarianceReport {
        seed,
        state: format!("{state:?}"),
        g,
        h,
        max_spectral_error,
        xi_equal,
        theta_equal,
        segre_matched,
        appendix_a,
        confidence: (before.confidence, after.confidence),
        property_violations,
        failures,
    })
}

/// `trials` trials with seeds `seed, seed+1, …`, run in parallel and returned
/// in seed order.
pub fn run_fuzz(state: &StateVector, seed: u64, trials: usize, config: &RunConfig) -> Result<Vec<InvarianceReport>, ClassifyError> {
    (0..trials as u64).into_par_iter().map(|t| invariance_trial(state, seed.wrapping_add(t), config)).collect()
}

/// A nonzero state with Gaussian-rational amplitudes, deterministic per seed.
pub fn random_gaussian_state(num_qubits: usize, seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let amps: Vec<_> = (0..1usize << num_qubits).map(|_| random_gauss_entry(&mut rng)).collect();
        if let Ok(s) = StateVector::from_exact(num_qubits, amps) {
            return s;
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EigvecMapReport {
    /// Eigenvectors of nonzero eigenvalues that were mapped and checked.
    pub nonzero_checked: usize,
    pub kernel_checked: usize,
    /// Largest `‖DW − √(gh)λW‖ / ‖W‖` (or `‖DV‖/‖V‖` on the kernel).
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Maps eigenvectors of `M = [[0,Γ],[Γᵗ,0]]` to eigenvectors of
/// `D = [[0,hΓ],[gΓᵗ,0]]`: `(v′, v″)` for `λ` becomes `(√(h/g)·v′, v″)` for
/// `√(gh)·λ`; kernel vectors are kept as they are.
pub fn eigvec_map_check(gamma: &ComplexMatrix, g: C64, h: C64, tol: f64) -> Result<EigvecMapReport, crate::numkit::NumError> {
    let n = gamma.rows();
    let m = phi_from_gamma(gamma);
    let zero = ComplexMatrix::zeros(n, n);
    let d = ComplexMatrix::block(&zero, &gamma.scale(h), &gamma.transpose().scale(g), &zero);
    // branch of √(gh) tied to r so that s = g·r and s·r = h
    let r = (h / g).sqrt();
    let s = g * r;

    let raw = eigenvalues(&m)?;
    let clusters = merge_defective(&m, cluster_eigenvalues(&raw, 1e-7).clusters, 1e-8);
    let scale = m.frobenius_norm().max(1.0);
    let (mut nonzero_checked, mut kernel_checked, mut worst) = (0, 0, 0.0f64);
    for c in &clusters {
        let lambda = c.representative;
        let vecs = nullspace(&m.shift(lambda), 1e-10 * scale);
        for j in 0..vecs.cols() {
            let v = vecs.column(j);
            let residual = if c.is_zero {
                kernel_checked += 1;
                vec_norm(&d.mul_vec(&v)) / vec_norm(&v)
            } else {
                nonzero_checked += 1;
                let w: Vec<C64> = v[..n].iter().map(|x| x * r).chain(v[n..].iter().copied()).collect();
                let dw = d.mul_vec(&w);
                let diff: Vec<C64> = dw.iter().zip(&w).map(|(a, b)| a - s * lambda * b).collect();
                vec_norm(&diff) / vec_norm(&w)
            };
            worst = worst.max(residual);
        }
    }
    Ok(EigvecMapReport { nonzero_checked, kernel_checked, max_residual: worst, tolerance: tol, passed: worst <= tol })
}
