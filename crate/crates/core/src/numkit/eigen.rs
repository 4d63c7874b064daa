//! Eigenvalues of a dense complex matrix: Householder reduction to upper
//! Hessenberg form followed by single-shift QR sweeps with Wilkinson shifts.

use super::matrix::{ComplexMatrix, C64, ZERO};
use super::NumError;

const SWEEPS_PER_EIGENVALUE: usize = 60;

/// Unitary similarity to upper Hessenberg form.
pub fn hessenberg(a: &ComplexMatrix) -> ComplexMatrix {
    assert!(a.is_square());
    let n = a.rows();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 { C64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let mut v: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] += phase * norm;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // left: rows k+1.., all columns
        for j in 0..n {
            let dot: C64 = v.iter().enumerate().map(|(t, vi)| vi.conj() * h[(k + 1 + t, j)]).sum();
            for (t, vi) in v.iter().enumerate() {
                h[(k + 1 + t, j)] -= vi * dot * 2.0;
            }
        }
        // right: all rows, columns k+1..
        for i in 0..n {
            let dot: C64 = v.iter().enumerate().map(|(t, vi)| h[(i, k + 1 + t)] * vi).sum();
            for (t, vi) in v.iter().enumerate() {
                h[(i, k + 1 + t)] -= dot * vi.conj() * 2.0;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    h
}

/// Rotation `G = [[ᾱ, β̄], [−β, α]]` with `G·(a, b)ᵗ = (r, 0)ᵗ`.
fn givens(a: C64, b: C64) -> Option<(C64, C64)> {
    let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if r == 0.0 {
        None
    } else {
        Some((a / r, b / r))
    }
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let (s1, s2) = (mean + disc, mean - disc);
    if (s1 - d).norm() <= (s2 - d).norm() {
        s1
    } else {
        s2
    }
}

/// All eigenvalues, in the order they deflate.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<C64>, NumError> {
    if !a.is_square() {
        return Err(NumError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let mut h = hessenberg(a);
    let scale = h.frobenius_norm();
    let mut out = vec![ZERO; n];
    if n == 0 {
        return Ok(out);
    }
    let budget = SWEEPS_PER_EIGENVALUE * n;
    let mut total = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n - 1;

    loop {
        if hi == 0 {
            out[0] = h[(0, 0)];
            break;
        }
        // locate the start of the active unreduced block
        let mut lo = hi;
        while lo > 0 {
            let mut tst = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if tst == 0.0 {
                tst = scale;
            }
            if h[(lo, lo - 1)].norm() <= f64::EPSILON * tst {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            out[hi] = h[(hi, hi)];
            hi -= 1;
            since_deflation = 0;
            continue;
        }

        total += 1;
        since_deflation += 1;
        if total > budget {
            return Err(NumError::IterationCap { iterations: total, dimension: n });
        }

        let mu = if since_deflation % 11 == 0 {
            // exceptional shift breaks symmetric stalls
            h[(hi, hi)] + C64::new(0.75, 0.25) * h[(hi, hi - 1)].norm()
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        // H - mu I = QR, H <- RQ + mu I on the active window
        for i in lo..=hi {
            h[(i, i)] -= mu;
        }
        let mut rotations = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let rot = givens(h[(k, k)], h[(k + 1, k)]);
            if let Some((alpha, beta)) = rot {
                for j in k..=hi {
                    let (x, y) = (h[(k, j)], h[(k + 1, j)]);
                    h[(k, j)] = alpha.conj() * x + beta.conj() * y;
                    h[(k + 1, j)] = -beta * x + alpha * y;
                }
                h[(k + 1, k)] = ZERO;
            }
            rotations.push(rot);
        }
        for (offset, rot) in rotations.into_iter().enumerate() {
            let k = lo + offset;
            if let Some((alpha, beta)) = rot {
                for i in lo..=(k + 1).min(hi) {
                    let (x, y) = (h[(i, k)], h[(i, k + 1)]);
                    h[(i, k)] = x * alpha + y * beta;
                    h[(i, k + 1)] = -x * beta.conj() + y * alpha.conj();
                }
            }
        }
        for i in lo..=hi {
            h[(i, i)] += mu;
        }
    }
    Ok(out)
}
