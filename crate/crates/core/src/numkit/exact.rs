//! Exact arithmetic over the Gaussian rationals `Q(i)`.
//!
//! Ranks are computed fraction-free: the matrix is first scaled to Gaussian
//! integers (rank is unaffected), then Bareiss elimination runs over `Z[i]`
//! where every division is exact.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{ComplexMatrix, C64};

pub type GaussRational = Complex<BigRational>;
pub type GaussInt = Complex<BigInt>;

pub fn gq(re: i64, im: i64) -> GaussRational {
    Complex::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
}

/// `(re_num/re_den) + (im_num/im_den)·i`.
pub fn gq_frac(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> GaussRational {
    Complex::new(
        BigRational::new(re_num.into(), re_den.into()),
        BigRational::new(im_num.into(), im_den.into()),
    )
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    let (n, d) = (q.numer(), q.denom());
    if let (Some(a), Some(b)) = (n.to_f64(), d.to_f64()) {
        if a.is_finite() && b.is_finite() && b != 0.0 {
            return a / b;
        }
    }
    // keep the top 64 bits of each side and carry the binary exponent apart
    let top = |x: &BigInt| {
        let shift = x.bits().saturating_sub(64);
        ((x >> shift).to_f64().unwrap_or(0.0), shift as i64)
    };
    let ((a, sa), (b, sb)) = (top(n), top(d));
    let exp = (sa - sb).clamp(-4000, 4000) as i32;
    // split the exponent so 2^exp itself never overflows early
    (a / b) * 2f64.powi(exp / 2) * 2f64.powi(exp - exp / 2)
}

pub fn to_c64(z: &GaussRational) -> C64 {
    C64::new(rational_to_f64(&z.re), rational_to_f64(&z.im))
}

/// Dense row-major matrix over `Q(i)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![GaussRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = GaussRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<GaussRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix { rows: r, cols: c, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: GaussRational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, s: &GaussRational) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    /// `self − s·I`.
    pub fn shift(&self, s: &GaussRational) -> Self {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let idx = i * self.cols + i;
            m.data[idx] = &m.data[idx] - s;
        }
        m
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self.get(i / other.rows, j / other.cols) * other.get(i % other.rows, j % other.cols)
        })
    }

    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!((a.rows, c.rows, a.cols, b.cols), (b.rows, d.rows, c.cols, d.cols));
        Self::from_fn(a.rows + c.rows, a.cols + b.cols, |i, j| match (i < a.rows, j < a.cols) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b.get(i, j - a.cols).clone(),
            (false, true) => c.get(i - a.rows, j).clone(),
            (false, false) => d.get(i - a.rows, j - a.cols).clone(),
        })
    }

    pub fn to_float(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| to_c64(self.get(i, j)))
    }

    /// Least common multiple of every real and imaginary denominator.
    pub fn common_denominator(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |acc, z| acc.lcm(z.re.denom()).lcm(z.im.denom()))
    }

    /// `d·self` as a Gaussian-integer matrix, for the smallest positive `d`
    /// that clears all denominators.
    pub fn to_gaussian_integers(&self) -> Vec<Vec<GaussInt>> {
        let d = self.common_denominator();
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let z = self.get(i, j);
                        let re = (z.re.numer() * &d) / z.re.denom();
                        let im = (z.im.numer() * &d) / z.im.denom();
                        GaussInt::new(re, im)
                    })
                    .collect()
            })
            .collect()
    }

    pub fn pow(&self, e: usize) -> Self {
        assert!(self.is_square());
        (0..e).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = &out.data[idx] + a * b;
                }
            }
        }
        out
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, " ({}{}{}i)", z.re, if z.im.is_negative() { "" } else { "+" }, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Exact division in `Z[i]`; the caller guarantees `b | a`.
fn exact_div(a: &GaussInt, b: &GaussInt) -> GaussInt {
    let norm = &b.re * &b.re + &b.im * &b.im;
    let num = a * b.conj();
    debug_assert!(num.re.is_multiple_of(&norm) && num.im.is_multiple_of(&norm));
    GaussInt::new(num.re / &norm, num.im / norm)
}

/// Rank over `Q(i)` via fraction-free (Bareiss) elimination.
pub fn exact_rank(m: &ExactMatrix) -> usize {
    let mut a = m.to_gaussian_integers();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = GaussInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in r + 1..rows {
            let factor = a[i][c].clone();
            for j in c + 1..cols {
                let val = &pivot * &a[i][j] - &factor * &a[r][j];
                a[i][j] = exact_div(&val, &prev);
            }
            a[i][c] = GaussInt::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// `d_j = n − rank(M^j)` for `j = 1, 2, …` until the sequence stops growing
/// (or reaches `target`, when given). Returned without the leading `d_0 = 0`.
pub fn exact_weyr_at_zero(m: &ExactMatrix, target: Option<usize>) -> Vec<usize> {
    assert!(m.is_square());
    let n = m.rows();
    let mut weyr: Vec<usize> = Vec::new();
    let mut power = m.clone();
    loop {
        let d = n - exact_rank(&power);
        if d == 0 || weyr.last() == Some(&d) {
            break;
        }
        weyr.push(d);
        if Some(d) == target || d == n {
            break;
        }
        power = &power * m;
    }
    weyr
}
