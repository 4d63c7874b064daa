use serde::Serialize;

use super::matrix::{ComplexMatrix, C64};
use super::qr::nullspace;

/// A group of computed eigenvalues treated as one exact eigenvalue.
#[derive(Debug, Clone, Serialize)]
pub struct EigenCluster {
    #[serde(serialize_with = "crate::numkit::serialize_c64")]
    pub representative: C64,
    pub algebraic_multiplicity: usize,
    #[serde(skip)]
    pub members: Vec<C64>,
    pub is_zero: bool,
}

#[derive(Debug, Clone)]
pub struct ClusterOutcome {
    pub clusters: Vec<EigenCluster>,
    pub threshold: f64,
    /// Smallest distance between two different clusters when it is less than
    /// ten thresholds; such splits are not trustworthy.
    pub ambiguous_gap: Option<f64>,
}

/// Single-linkage clustering with threshold `tol · max(1, max|λ|)`.
///
/// Clusters are returned sorted by representative (real part, then imaginary
/// part) so the output is deterministic.
pub fn cluster_eigenvalues(raw: &[C64], tol: f64) -> ClusterOutcome {
    let scale = raw.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let threshold = tol * scale;
    let n = raw.len();

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (raw[i] - raw[j]).norm() <= threshold {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if root_slot[r] == usize::MAX {
            root_slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_slot[r]].push(i);
    }

    let mut ambiguous_gap: Option<f64> = None;
    for i in 0..n {
        for j in i + 1..n {
            if find(&mut parent, i) != find(&mut parent, j) {
                let d = (raw[i] - raw[j]).norm();
                if d < 10.0 * threshold {
                    ambiguous_gap = Some(ambiguous_gap.map_or(d, |g: f64| g.min(d)));
                }
            }
        }
    }

    let mut clusters: Vec<EigenCluster> = groups
        .into_iter()
        .map(|idx| {
            let members: Vec<C64> = idx.iter().map(|&i| raw[i]).collect();
            let is_zero = members.iter().any(|z| z.norm() <= threshold);
            let representative = if is_zero {
                C64::new(0.0, 0.0)
            } else {
                members.iter().sum::<C64>() / members.len() as f64
            };
            EigenCluster { representative, algebraic_multiplicity: members.len(), members, is_zero }
        })
        .collect();
    clusters.sort_by(|a, b| {
        a.representative
            .re
            .total_cmp(&b.representative.re)
            .then(a.representative.im.total_cmp(&b.representative.im))
    });
    ClusterOutcome { clusters, threshold, ambiguous_gap }
}

/// Beyond this size `ε^{1/m}` is no longer small enough to tell a split block
/// from genuinely distinct eigenvalues.
pub const MAX_DEFECTIVE_MERGE: usize = 8;

/// Merges clusters that are the split images of one defective eigenvalue.
///
/// A Jordan block of size `m` perturbed by `ε` scatters into `m` eigenvalues
/// about `ε^{1/m}` apart, so single-linkage at `tol` leaves them separate. A
/// group of nearby clusters with total multiplicity `m` is merged when
/// `(M − μI)^m` at their mean `μ` has nullity exactly `m`, measured against
/// `tol_rank·‖M − μI‖^m`, the group holds at most [`MAX_DEFECTIVE_MERGE`]
/// eigenvalues, and every other eigenvalue is at least ten spreads away.
pub fn merge_defective(m: &ComplexMatrix, clusters: Vec<EigenCluster>, tol_rank: f64) -> Vec<EigenCluster> {
    let scale = clusters.iter().map(|c| c.representative.norm()).fold(1.0, f64::max);
    let bound = |size: usize| 10.0 * scale * (1e-14f64).powf(1.0 / size as f64);
    let mut clusters = clusters;
    'restart: loop {
        for seed in 0..clusters.len() {
            if clusters[seed].is_zero {
                continue;
            }
            let origin = clusters[seed].representative;
            let mut near: Vec<usize> = (0..clusters.len())
                .filter(|&j| j != seed && !clusters[j].is_zero)
                .collect();
            near.sort_by(|&a, &b| {
                (clusters[a].representative - origin).norm().total_cmp(&(clusters[b].representative - origin).norm())
            });
            near.truncate(MAX_DEFECTIVE_MERGE - 1);
            for take in (1..=near.len()).rev() {
                let group: Vec<usize> = std::iter::once(seed).chain(near[..take].iter().copied()).collect();
                let members: Vec<C64> = group.iter().flat_map(|&g| clusters[g].members.iter().copied()).collect();
                let size = members.len();
                if size > MAX_DEFECTIVE_MERGE {
                    continue;
                }
                let spread = members
                    .iter()
                    .flat_map(|a| members.iter().map(move |b| (a - b).norm()))
                    .fold(0.0, f64::max);
                if spread > bound(size) {
                    continue;
                }
                let mu = members.iter().sum::<C64>() / size as f64;
                let isolated = (0..clusters.len())
                    .filter(|j| !group.contains(j))
                    .flat_map(|j| clusters[j].members.iter())
                    .all(|z| (z - mu).norm() > 10.0 * spread);
                if !isolated {
                    continue;
                }
                let shifted = m.shift(mu);
                let mut power = shifted.clone();
                for _ in 1..size {
                    power = &power * &shifted;
                }
                // absolute threshold: a whole block collapses to O(ε) in the power
                let threshold = tol_rank * shifted.frobenius_norm().max(1.0).powi(size as i32);
                if nullspace(&power, threshold).cols() != size {
                    continue;
                }
                let merged = EigenCluster { representative: mu, algebraic_multiplicity: size, members, is_zero: false };
                let mut keep: Vec<EigenCluster> =
                    clusters.into_iter().enumerate().filter(|(i, _)| !group.contains(i)).map(|(_, c)| c).collect();
                keep.push(merged);
                clusters = keep;
                continue 'restart;
            }
        }
        break;
    }
    clusters.sort_by(|a, b| {
        a.representative
            .re
            .total_cmp(&b.representative.re)
            .then(a.representative.im.total_cmp(&b.representative.im))
    });
    clusters
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn clear_gap() {
        let out = cluster_eigenvalues(&[r(1.0), r(1.0 + 1e-12), r(5.0)], 1e-7);
        assert_eq!(out.clusters.len(), 2);
        assert_eq!(out.clusters[0].algebraic_multiplicity, 2);
        assert_eq!(out.clusters[1].algebraic_multiplicity, 1);
        assert!(out.ambiguous_gap.is_none());
    }

    #[test]
    fn zero_absorption() {
        let out = cluster_eigenvalues(&[r(1e-13), r(-1e-13)], 1e-7);
        assert_eq!(out.clusters.len(), 1);
        assert!(out.clusters[0].is_zero);
        assert_eq!(out.clusters[0].algebraic_multiplicity, 2);
    }

    #[test]
    fn split_jordan_block_is_merged() {
        // J₄(2) perturbed in the corner scatters into four eigenvalues.
        let mut a = ComplexMatrix::from_fn(4, 4, |i, j| {
            if i == j {
                r(2.0)
            } else if j == i + 1 {
                r(1.0)
            } else {
                r(0.0)
            }
        });
        a[(3, 0)] = r(1e-14);
        let raw = crate::numkit::eigenvalues(&a).unwrap();
        let split = cluster_eigenvalues(&raw, 1e-7).clusters;
        assert!(split.len() > 1);
        let merged = merge_defective(&a, split, 1e-8);
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].algebraic_multiplicity, 4);
        assert!((merged[0].representative - r(2.0)).norm() < 1e-10);
    }

    #[test]
    fn distinct_eigenvalues_stay_apart() {
        let a = ComplexMatrix::diagonal(&[r(1.0), r(1.001), r(3.0)]);
        let raw = crate::numkit::eigenvalues(&a).unwrap();
        let merged = merge_defective(&a, cluster_eigenvalues(&raw, 1e-7).clusters, 1e-8);
        assert_eq!(merged.len(), 3);
    }

    #[test]
    fn boundary_case_is_ambiguous() {
        let tol = 1e-7;
        let out = cluster_eigenvalues(&[r(1.0), r(1.0 + 2.0 * tol)], tol);
        assert!(out.ambiguous_gap.is_some());
    }
}
