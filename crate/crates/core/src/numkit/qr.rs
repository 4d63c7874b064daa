//! Householder QR with column pivoting, and the rank / nullspace helpers built
//! on top of it.

use super::matrix::{ComplexMatrix, C64, ONE, ZERO};

/// `A·P = Q·R` with `Q` unitary (m×m), `R` upper trapezoidal (m×n) and the
/// permutation stored as `perm[j]` = original index of column `j`.
pub struct Cpqr {
    pub q: ComplexMatrix,
    pub r: ComplexMatrix,
    pub perm: Vec<usize>,
}

impl Cpqr {
    /// Magnitudes of the diagonal of `R`; non-increasing up to rounding.
    pub fn diagonal_magnitudes(&self) -> Vec<f64> {
        (0..self.r.rows().min(self.r.cols())).map(|i| self.r[(i, i)].norm()).collect()
    }
}

pub fn cpqr(a: &ComplexMatrix) -> Cpqr {
    let (m, n) = (a.rows(), a.cols());
    let mut r = a.clone();
    let mut q = ComplexMatrix::identity(m);
    let mut perm: Vec<usize> = (0..n).collect();

    for k in 0..m.min(n) {
        // pivot: remaining column with the largest trailing norm
        let (best, best_norm) = (k..n)
            .map(|j| (j, (k..m).map(|i| r[(i, j)].norm_sqr()).sum::<f64>()))
            .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best != k {
            for i in 0..m {
                let tmp = r[(i, k)];
                r[(i, k)] = r[(i, best)];
                r[(i, best)] = tmp;
            }
            perm.swap(k, best);
        }
        let norm = best_norm.sqrt();
        if norm == 0.0 {
            break;
        }

        // Householder vector v with (I - 2 v v^H) x = alpha e_1
        let x0 = r[(k, k)];
        let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        let mut v: Vec<C64> = (k..m).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }

        // R <- H R on rows k.., columns k..
        for j in k..n {
            let dot: C64 = v.iter().enumerate().map(|(t, vi)| vi.conj() * r[(k + t, j)]).sum();
            for (t, vi) in v.iter().enumerate() {
                r[(k + t, j)] -= vi * dot * 2.0;
            }
        }
        for i in k + 1..m {
            r[(i, k)] = ZERO;
        }
        // Q <- Q H on columns k..
        for i in 0..m {
            let dot: C64 = v.iter().enumerate().map(|(t, vi)| q[(i, k + t)] * vi).sum();
            for (t, vi) in v.iter().enumerate() {
                q[(i, k + t)] -= dot * vi.conj() * 2.0;
            }
        }
    }
    Cpqr { q, r, perm }
}

/// Numerical rank: `#{ |R_ii| > tol · |R_00| }`.
pub fn rank(m: &ComplexMatrix, tol: f64) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let diag = cpqr(m).diagonal_magnitudes();
    let lead = diag.first().copied().unwrap_or(0.0);
    if lead == 0.0 {
        return 0;
    }
    diag.iter().take_while(|&&d| d > tol * lead).count()
}

/// Orthonormal basis (as columns) of `{x : M x ≈ 0}` where singular directions
/// are those whose pivoted `R` diagonal falls at or below `abs_tol`.
pub fn nullspace(m: &ComplexMatrix, abs_tol: f64) -> ComplexMatrix {
    let n = m.cols();
    if m.rows() == 0 {
        return ComplexMatrix::identity(n);
    }
    // range(M^H) = first r columns of Q in M^H P = Q R; the rest spans ker M.
    let f = cpqr(&m.adjoint());
    let r = f.diagonal_magnitudes().iter().take_while(|&&d| d > abs_tol).count();
    f.q.submatrix(0..n, r..n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn factorization_reconstructs_input() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(0.0, 0.5), c(3.0, -1.0)],
            vec![c(-2.0, 0.0), c(4.0, 1.0), c(0.0, 0.0)],
            vec![c(0.5, 0.5), c(1.0, 0.0), c(-1.0, 3.0)],
            vec![c(0.0, 1.0), c(2.0, 2.0), c(1.0, 1.0)],
        ]);
        let f = cpqr(&a);
        let qr = &f.q * &f.r;
        let ap = ComplexMatrix::from_fn(4, 3, |i, j| a[(i, f.perm[j])]);
        assert!(qr.distance(&ap) < 1e-12);
        let qhq = &f.q.adjoint() * &f.q;
        assert!(qhq.distance(&ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&ComplexMatrix::zeros(3, 3), 1e-8), 0);
        assert_eq!(rank(&ComplexMatrix::identity(5), 1e-8), 5);
        assert_eq!(rank(&ComplexMatrix::from_real(&[&[1.0, 1.0], &[1.0, 1.0]]), 1e-8), 1);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = ComplexMatrix::from_real(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let z = nullspace(&m, 1e-10);
        assert_eq!(z.cols(), 1);
        assert!((&m * &z).frobenius_norm() < 1e-12);
    }
}
