//! Spectrum and Jordan data of `Φ`.
//!
//! `det(λI − Φ) = det(λ²I − ΓΓᵗ)`, so the nonzero eigenvalues of `Φ` come in
//! pairs `±√σ` over the nonzero eigenvalues `σ` of `A = ΓΓᵗ`, with the same
//! multiplicities, and a zero root of multiplicity `k` in `A` is a zero of
//! multiplicity `2k` in `Φ`.
//!
//! Two routes produce the data:
//!
//! * **exact** (Gaussian-rational input): the characteristic polynomial of `A`
//!   is computed exactly and split into square-free multiplicity classes, which
//!   pins down `Ξ` exactly; the zero Weyr sequence comes from exact ranks of
//!   `Φ^j`. For nonzero eigenvalues, block sizes are measured numerically at the
//!   (well-conditioned) simple roots of each class and certified against exact
//!   kernel dimensions of `q(A)^j`.
//! * **float**: a kernel chain at zero, eigenvalues of `A` clustered with
//!   `tol_cluster`, and kernel chains at `±√σ`.

use crate::config::{ExactMode, RunConfig, EXACT_MAX_PHI_DIMENSION};
use crate::diagnostics::Diagnostic;
use crate::numkit::exact::{to_c64, ExactMatrix};
use crate::numkit::poly::simple_roots;
use crate::numkit::{
    charpoly, cluster_eigenvalues, eigenvalues, merge_defective, exact_weyr_at_zero, square_free_decomposition, weyr_chain, ComplexMatrix,
    EigenJordan, NumError, C64,
};
use crate::phi::PhiInput;

/// Jordan data for the eigenvalue pair `±λ`.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub plus: EigenJordan,
    pub minus: EigenJordan,
}

/// Everything the classifier extracts from `Φ`.
#[derive(Debug, Clone)]
pub struct PhiAnalysis {
    pub input: PhiInput,
    /// `None` when zero is not an eigenvalue.
    pub zero: Option<EigenJordan>,
    pub pairs: Vec<EigenPair>,
    /// True when `Ξ` and the zero Weyr sequence came from exact arithmetic and
    /// every nonzero class was certified.
    pub exact: bool,
    pub diagnostics: Vec<Diagnostic>,
}

impl PhiAnalysis {
    pub fn zero_am(&self) -> usize {
        self.zero.as_ref().map_or(0, |z| z.algebraic_multiplicity)
    }
}

pub fn analyze(input: PhiInput, config: &RunConfig) -> Result<PhiAnalysis, NumError> {
    let use_exact =
        config.exact_mode == ExactMode::Auto && input.is_exact() && input.phi.rows() <= EXACT_MAX_PHI_DIMENSION;
    if use_exact {
        exact_analysis(input, config)
    } else {
        float_analysis(input, config)
    }
}

fn sort_pairs(pairs: &mut [EigenPair]) {
    pairs.sort_by(|a, b| {
        a.plus
            .algebraic_multiplicity
            .cmp(&b.plus.algebraic_multiplicity)
            .reverse()
            .then(a.plus.lambda.re.total_cmp(&b.plus.lambda.re))
            .then(a.plus.lambda.im.total_cmp(&b.plus.lambda.im))
    });
}

/// Weyr chains at `+λ` and `−λ`. A failed chain degrades to "all blocks of size
/// one" and leaves a diagnostic.
fn measure_pair(phi: &ComplexMatrix, lambda: C64, am: usize, tol_rank: f64, diagnostics: &mut Vec<Diagnostic>) -> EigenPair {
    if am == 1 {
        // a simple eigenvalue is a single 1×1 block
        return EigenPair {
            plus: EigenJordan::from_weyr(lambda, 1, vec![1]),
            minus: EigenJordan::from_weyr(-lambda, 1, vec![1]),
        };
    }
    let mut side = |l: C64| match weyr_chain(phi, l, Some(am), tol_rank) {
        Ok(chain) => EigenJordan::from_weyr(l, am, chain.weyr),
        Err(e) => {
            diagnostics.push(Diagnostic::Numerical { detail: e.to_string() });
            EigenJordan::from_weyr(l, am, vec![am])
        }
    };
    let plus = side(lambda);
    let minus = side(-lambda);
    EigenPair { plus, minus }
}

fn exact_analysis(input: PhiInput, config: &RunConfig) -> Result<PhiAnalysis, NumError> {
    let gamma = input.gamma_exact.as_ref().expect("exact input");
    let phi_exact = input.phi_exact.as_ref().expect("exact input");
    let mut diagnostics = Vec::new();

    // A scaled to Gaussian integers; scaling moves eigenvalues but not structure.
    let a = gamma * &gamma.transpose();
    let denom = a.common_denominator();
    let scale = crate::numkit::GaussRational::new(num_rational::BigRational::from_integer(denom.clone()), Default::default());
    let a_int = a.scale(&scale);
    let inv_scale = 1.0 / crate::numkit::exact::rational_to_f64(&num_rational::BigRational::from_integer(denom));

    let chi = charpoly(&a_int);
    let k = chi.zero_root_multiplicity();
    let zero = if k > 0 {
        let weyr = exact_weyr_at_zero(phi_exact, Some(2 * k));
        if weyr.last() != Some(&(2 * k)) {
            diagnostics.push(Diagnostic::Uncertified {
                detail: format!("exact zero Weyr sequence {weyr:?} does not reach multiplicity {}", 2 * k),
            });
        }
        Some(EigenJordan::from_weyr(C64::new(0.0, 0.0), 2 * k, weyr))
    } else {
        None
    };

    let mut pairs = Vec::new();
    let mut certified = true;
    for (m, q) in square_free_decomposition(&chi.shift_down(k)) {
        if q.degree() == 1 {
            // single eigenvalue σ = −q₀ (q is monic): fully exact
            let sigma = -q.coeffs()[0].clone();
            let weyr = exact_weyr_at_zero(&a_int.shift(&sigma), Some(m));
            let lambda = (to_c64(&sigma) * inv_scale).sqrt();
            pairs.push(EigenPair {
                plus: EigenJordan::from_weyr(lambda, m, weyr.clone()),
                minus: EigenJordan::from_weyr(-lambda, m, weyr),
            });
            continue;
        }
        let roots = simple_roots(&q)?;
        // q is square-free, so coincident numerical roots mean the root finder
        // failed (and the kernel sums below could not notice)
        let spread = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let collided = roots
            .iter()
            .enumerate()
            .any(|(i, a)| roots[i + 1..].iter().any(|b| (a - b).norm() <= 1e-9 * spread));
        if collided {
            certified = false;
            diagnostics.push(Diagnostic::Uncertified {
                detail: format!("roots of a degree-{} factor are not numerically distinct", q.degree()),
            });
        }
        let class: Vec<EigenPair> = roots
            .iter()
            .map(|&s| measure_pair(&input.phi, (s * inv_scale).sqrt(), m, config.tol_rank, &mut diagnostics))
            .collect();
        // Σ over the class of dim ker (A − σ)^j must equal dim ker q(A)^j.
        let exact_dims = exact_weyr_at_zero(&q.eval_matrix(&a_int), Some(m * q.degree()));
        let measured: Vec<usize> = (0..exact_dims.len())
            .map(|j| class.iter().map(|p| p.plus.weyr.get(j).or(p.plus.weyr.last()).copied().unwrap_or(0)).sum())
            .collect();
        let longest = class.iter().map(|p| p.plus.weyr.len()).max().unwrap_or(0);
        if measured != exact_dims || longest > exact_dims.len() {
            certified = false;
            diagnostics.push(Diagnostic::Uncertified {
                detail: format!(
                    "multiplicity-{m} class of degree {}: measured kernel dimensions {measured:?}, exact {exact_dims:?}",
                    q.degree()
                ),
            });
        }
        pairs.extend(class);
    }
    sort_pairs(&mut pairs);
    Ok(PhiAnalysis { input, zero, pairs, exact: certified, diagnostics })
}

fn float_analysis(input: PhiInput, config: &RunConfig) -> Result<PhiAnalysis, NumError> {
    let mut diagnostics = Vec::new();
    let n = input.half_dimension();

    let zero_chain = weyr_chain(&input.phi, C64::new(0.0, 0.0), None, config.tol_rank)?;
    let zero_am = zero_chain.weyr.last().copied().unwrap_or(0);
    let zero = (zero_am > 0).then(|| EigenJordan::from_weyr(C64::new(0.0, 0.0), zero_am, zero_chain.weyr));

    let a = &input.gamma * &input.gamma.transpose();
    let mut sigma = eigenvalues(&a)?;
    sigma.sort_by(|x, y| x.norm().total_cmp(&y.norm()));
    let k = (zero_am / 2).min(n);
    let nonzero = &sigma[k..];

    let outcome = cluster_eigenvalues(nonzero, config.tol_cluster);
    if let Some(gap) = outcome.ambiguous_gap {
        diagnostics.push(Diagnostic::ClusterAmbiguity { gap, threshold: outcome.threshold });
    }
    let clusters = merge_defective(&a, outcome.clusters, config.tol_rank);
    let mut pairs = Vec::new();
    for cluster in &clusters {
        if cluster.is_zero {
            diagnostics.push(Diagnostic::Numerical {
                detail: format!(
                    "{} eigenvalue(s) of ΓΓᵗ near zero beyond the zero kernel chain (multiplicity {zero_am})",
                    cluster.algebraic_multiplicity
                ),
            });
        }
        let lambda = cluster.representative.sqrt();
        pairs.push(measure_pair(&input.phi, lambda, cluster.algebraic_multiplicity, config.tol_rank, &mut diagnostics));
    }
    sort_pairs(&mut pairs);
    Ok(PhiAnalysis { input, zero, pairs, exact: false, diagnostics })
}

/// Exact `ΓΓᵗ`, if available (used by validators).
pub fn exact_gram(input: &PhiInput) -> Option<ExactMatrix> {
    input.gamma_exact.as_ref().map(|g| g * &g.transpose())
}
