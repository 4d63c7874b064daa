//! Structural properties every `Φ` must satisfy. A violation means the
//! numerics went wrong, so the classification is downgraded rather than
//! trusted.

use crate::diagnostics::Diagnostic;
use crate::numkit::jordan::weyr_differences;
use crate::numkit::{nullspace, rank, rank_checked, vec_norm, ComplexMatrix, C64};
use crate::partitions::{JordanLabel, SpectrumSignature};

use super::analysis::PhiAnalysis;

/// Residual bound for kernel vectors of `Φ`, relative to `max(1, ‖Φ‖_F)`.
pub const KERNEL_RESIDUAL_TOLERANCE: f64 = 1e-9;
/// Minimum norm of either half of an eigenvector, relative to the whole.
pub const HALF_NORM_TOLERANCE: f64 = 1e-8;
/// Above this size of `Φ`, per-eigenvalue checks on simple eigenvalues are
/// sampled instead of exhaustive (each costs a full decomposition).
pub const FULL_CHECK_MAX_DIMENSION: usize = 128;
/// Number of simple eigenvalues (smallest `|λ|` first) checked when sampling.
pub const SAMPLED_SIMPLE_EIGENVALUES: usize = 2;

/// Spectrum signature read directly off the eigenvalue multiplicities.
pub fn direct_xi(analysis: &PhiAnalysis) -> SpectrumSignature {
    SpectrumSignature::new(
        analysis.zero_am() / 2,
        crate::partitions::Partition::new(analysis.pairs.iter().map(|p| p.plus.algebraic_multiplicity)),
    )
}

pub fn validate(analysis: &PhiAnalysis, theta: &JordanLabel, tol_rank: f64) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let input = &analysis.input;
    let n = input.half_dimension();
    let gamma = &input.gamma;
    let phi = &input.phi;
    let zero_am = analysis.zero_am();
    let zero_gm = analysis.zero.as_ref().map_or(0, |z| z.geometric_multiplicity());

    // multiplicities add up to dim Φ
    let total: usize = zero_am + 2 * analysis.pairs.iter().map(|p| p.plus.algebraic_multiplicity).sum::<usize>();
    if total != 2 * n {
        out.push(Diagnostic::property("multiplicity sum", format!("multiplicities add to {total}, dimension is {}", 2 * n)));
    }

    // Property 1: ± pairing and even zero multiplicity
    if zero_am % 2 == 1 {
        out.push(Diagnostic::property("property 1", format!("zero multiplicity {zero_am} is odd")));
    }
    for p in &analysis.pairs {
        if p.plus.algebraic_multiplicity != p.minus.algebraic_multiplicity {
            out.push(Diagnostic::property(
                "property 1",
                format!("AM({}) = {} but AM(−λ) = {}", p.plus.lambda, p.plus.algebraic_multiplicity, p.minus.algebraic_multiplicity),
            ));
        }
    }

    // Property 3: zero GM = 2(N − rank Γ)
    let (rank_gamma, float_rank) = rank_checked(gamma, input.gamma_exact.as_ref(), tol_rank);
    if let Some(f) = float_rank {
        out.push(Diagnostic::RankMismatch { matrix: "Γ".into(), float: f, exact: rank_gamma });
    }
    if zero_gm != 2 * (n - rank_gamma) {
        out.push(Diagnostic::property(
            "property 3",
            format!("zero GM {zero_gm} but 2(N − rank Γ) = {}", 2 * (n - rank_gamma)),
        ));
    }

    // Property 4: ker Φ = ker Γᵗ ⊕ ker Γ (padded)
    let abs = tol_rank * gamma.frobenius_norm().max(f64::MIN_POSITIVE);
    let left = nullspace(&gamma.transpose(), abs);
    let right = nullspace(gamma, abs);
    if left.cols() + right.cols() != zero_gm {
        out.push(Diagnostic::property(
            "property 4",
            format!("dim ker Γᵗ + dim ker Γ = {} + {} but zero GM is {zero_gm}", left.cols(), right.cols()),
        ));
    }
    let bound = KERNEL_RESIDUAL_TOLERANCE * phi.frobenius_norm().max(1.0);
    let mut worst: f64 = 0.0;
    for j in 0..left.cols() {
        let mut v = left.column(j);
        v.extend(std::iter::repeat(C64::new(0.0, 0.0)).take(n));
        worst = worst.max(vec_norm(&phi.mul_vec(&v)));
    }
    for j in 0..right.cols() {
        let mut v = vec![C64::new(0.0, 0.0); n];
        v.extend(right.column(j));
        worst = worst.max(vec_norm(&phi.mul_vec(&v)));
    }
    if worst > bound {
        out.push(Diagnostic::property("property 4", format!("kernel residual {worst:.3e} exceeds {bound:.3e}")));
    }

    if let Some(z) = &analysis.zero {
        // Property 5.1: χ_{2k} + χ_{2k+1} even for k ≥ 1
        let chi = weyr_differences(&z.weyr);
        let at = |j: usize| chi.get(j - 1).copied().unwrap_or(0);
        for k in 1..=chi.len() / 2 {
            if (at(2 * k) + at(2 * k + 1)) % 2 == 1 {
                out.push(Diagnostic::property(
                    "property 5.1",
                    format!("χ_{} + χ_{} = {} is odd (Weyr {:?})", 2 * k, 2 * k + 1, at(2 * k) + at(2 * k + 1), z.weyr),
                ));
            }
        }
        // Property 5.3: zero Segre is tri-even
        if !z.segre.is_tri_even() {
            out.push(Diagnostic::property("property 5.3", format!("zero block sizes {} are not tri-even", z.segre)));
        }
    }

    let gtg = &gamma.transpose() * gamma;
    let mut simple: Vec<usize> = (0..analysis.pairs.len()).filter(|&i| analysis.pairs[i].plus.algebraic_multiplicity == 1).collect();
    if phi.rows() > FULL_CHECK_MAX_DIMENSION {
        simple.sort_by(|&a, &b| analysis.pairs[a].plus.lambda.norm().total_cmp(&analysis.pairs[b].plus.lambda.norm()));
        simple.truncate(SAMPLED_SIMPLE_EIGENVALUES);
    }
    for (idx, p) in analysis.pairs.iter().enumerate() {
        let is_simple = p.plus.algebraic_multiplicity == 1;
        if is_simple && !simple.contains(&idx) {
            // GM = AM = 1 and the Segre pair (1) = (1) hold by construction
            continue;
        }
        let lambda = p.plus.lambda;
        // Property 6: both halves of each eigenvector are nonzero
        let shifted = phi.shift(lambda);
        let vecs = nullspace(&shifted, tol_rank * shifted.frobenius_norm());
        for j in 0..vecs.cols() {
            let v = vecs.column(j);
            let whole = vec_norm(&v);
            let (top, bottom) = (vec_norm(&v[..n]), vec_norm(&v[n..]));
            if top <= HALF_NORM_TOLERANCE * whole || bottom <= HALF_NORM_TOLERANCE * whole {
                out.push(Diagnostic::property(
                    "property 6",
                    format!("eigenvector for λ = {lambda} has a vanishing half ({top:.3e}, {bottom:.3e})"),
                ));
            }
        }
        // Property 7: GM(λ) = N − rank(ΓᵗΓ − λ²I); forced for simple λ
        let r = if is_simple && phi.rows() > FULL_CHECK_MAX_DIMENSION {
            n - 1
        } else {
            rank(&gtg.shift(lambda * lambda), tol_rank)
        };
        if p.plus.geometric_multiplicity() != n - r {
            out.push(Diagnostic::property(
                "property 7",
                format!("GM({lambda}) = {} but N − rank(ΓᵗΓ − λ²I) = {}", p.plus.geometric_multiplicity(), n - r),
            ));
        }
        // Property 8: Segre(λ) = Segre(−λ)
        if p.plus.segre != p.minus.segre {
            out.push(Diagnostic::property(
                "property 8",
                format!("block sizes {} at λ = {lambda} but {} at −λ", p.plus.segre, p.minus.segre),
            ));
        }
    }

    // consistency of Ξ with ϑ
    let xi = direct_xi(analysis);
    if xi != theta.xi() {
        out.push(Diagnostic::property("label consistency", format!("Ξ = {xi} but ϑ = {theta} implies {}", theta.xi())));
    }
    out
}

/// Checks that only need a matrix: complex symmetry of `Φ`.
pub fn phi_is_symmetric(phi: &ComplexMatrix) -> bool {
    phi.is_symmetric(0.0)
}
