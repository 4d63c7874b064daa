//! Univariate polynomials over `Q(i)`: characteristic polynomials (Berkowitz,
//! division-free) and square-free decomposition (Yun), plus numerical root
//! refinement for the square-free factors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::eigen::eigenvalues;
use super::exact::{to_c64, ExactMatrix, GaussRational};
use super::matrix::{ComplexMatrix, C64};
use super::NumError;

/// Coefficients in ascending degree; never has a trailing zero coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    coeffs: Vec<GaussRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<GaussRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![GaussRational::one()] }
    }

    /// `x`
    pub fn x() -> Self {
        Poly::new(vec![GaussRational::zero(), GaussRational::one()])
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussRational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = GaussRational::one() / lc;
                Poly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * GaussRational::from(num_rational::BigRational::from_integer((i as i64).into())))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = GaussRational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![GaussRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dlen = divisor.coeffs.len();
        if rem.len() < dlen {
            return (Poly::zero(), self.clone());
        }
        let inv_lc = GaussRational::one() / divisor.leading().unwrap();
        let mut quot = vec![GaussRational::zero(); rem.len() - dlen + 1];
        for shift in (0..quot.len()).rev() {
            let coef = &rem[shift + dlen - 1] * &inv_lc;
            if coef.is_zero() {
                continue;
            }
            for (k, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] = &rem[shift + k] - &coef * d;
            }
            quot[shift] = coef;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Multiplicity of the root `0`, i.e. the number of leading zero coefficients.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides out `x^k`.
    pub fn shift_down(&self, k: usize) -> Self {
        Poly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_matrix(&self, m: &ExactMatrix) -> ExactMatrix {
        let n = m.rows();
        let mut acc = ExactMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &ExactMatrix::identity(n).scale(c);
        }
        acc
    }

    pub fn to_float(&self) -> Vec<C64> {
        self.coeffs.iter().map(to_c64).collect()
    }
}

/// `det(xI − M)` via Berkowitz's algorithm; no divisions are performed.
pub fn charpoly(m: &ExactMatrix) -> Poly {
    assert!(m.is_square());
    let n = m.rows();
    // highest-degree-first coefficient vector of the leading r×r principal minor
    let mut v: Vec<GaussRational> = vec![GaussRational::one()];
    for r in 0..n {
        // t = [1, −a_rr, −R C, −R A C, …, −R A^{r−1} C]
        let mut t = Vec::with_capacity(r + 2);
        t.push(GaussRational::one());
        t.push(-m.get(r, r).clone());
        let mut col: Vec<GaussRational> = (0..r).map(|i| m.get(i, r).clone()).collect();
        for _ in 0..r {
            let dot = (0..r).fold(GaussRational::zero(), |acc, j| acc + m.get(r, j) * &col[j]);
            t.push(-dot);
            col = (0..r)
                .map(|i| (0..r).fold(GaussRational::zero(), |acc, j| acc + m.get(i, j) * &col[j]))
                .collect();
        }
        // v <- T v with T the (r+2)×(r+1) lower-triangular Toeplitz matrix of t
        let next: Vec<GaussRational> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(GaussRational::zero(), |acc, j| acc + &t[i - j] * &v[j])
            })
            .collect();
        v = next;
    }
    v.reverse();
    Poly::new(v)
}

/// Yun's algorithm: `f = c · Π_m q_m^m` with every `q_m` monic and square-free
/// and pairwise coprime. Returns the non-constant `(m, q_m)` in increasing `m`.
pub fn square_free_decomposition(f: &Poly) -> Vec<(usize, Poly)> {
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let f = f.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0);
    let mut d = df.exact_div(&a0).sub(&b.derivative());
    let mut m = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        b = b.exact_div(&a);
        d = d.exact_div(&a).sub(&b.derivative());
        if a.degree() > 0 {
            out.push((m, a));
        }
        m += 1;
    }
    out
}

fn horner(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Rough `log₂|z|` of a Gaussian rational from bit lengths.
fn log2_magnitude(z: &GaussRational) -> Option<f64> {
    let part = |q: &BigRational| (!q.is_zero()).then(|| q.numer().bits() as f64 - q.denom().bits() as f64);
    match (part(&z.re), part(&z.im)) {
        (None, None) => None,
        (a, b) => Some(a.unwrap_or(f64::MIN).max(b.unwrap_or(f64::MIN))),
    }
}

/// Roots of a square-free polynomial: companion-matrix eigenvalues refined by
/// a few Newton steps. The variable is first rescaled by a power of two so the
/// roots have magnitude near one, which keeps huge exact coefficients inside
/// `f64` range.
pub fn simple_roots(p: &Poly) -> Result<Vec<C64>, NumError> {
    let deg = p.degree();
    if deg == 0 {
        return Ok(Vec::new());
    }
    let exact_monic = p.monic();
    // Fujiwara-style bound: max |aᵢ|^{1/(deg−i)}
    let exponent = (0..deg)
        .filter_map(|i| log2_magnitude(&exact_monic.coeffs()[i]).map(|l| l / (deg - i) as f64))
        .fold(f64::MIN, f64::max);
    let e = if exponent == f64::MIN { 0 } else { exponent.round() as i64 };
    let two = BigRational::from_integer(BigInt::from(2));
    let base = if e >= 0 { two.pow(e as i32) } else { BigRational::one() / two.pow((-e) as i32) };
    // q(c·y)/c^deg: coefficient i is divided by c^{deg−i}
    let mut factor = BigRational::one();
    let mut scaled = vec![GaussRational::zero(); deg + 1];
    for i in (0..=deg).rev() {
        let c = &exact_monic.coeffs()[i];
        scaled[i] = GaussRational::new(&c.re / &factor, &c.im / &factor);
        factor = &factor * &base;
    }
    let c_float = 2f64.powi(e as i32);
    let monic: Vec<C64> = scaled.iter().map(to_c64).collect();
    let companion = ComplexMatrix::from_fn(deg, deg, |i, j| {
        if i == 0 {
            -monic[deg - 1 - j]
        } else if i == j + 1 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let mut roots = eigenvalues(&companion)?;
    for z in roots.iter_mut() {
        for _ in 0..8 {
            let (v, dv) = horner(&monic, *z);
            if dv.norm() == 0.0 {
                break;
            }
            let step = v / dv;
            *z -= step;
            if step.norm() <= f64::EPSILON * z.norm().max(1.0) {
                break;
            }
        }
    }
    Ok(roots.into_iter().map(|z| z * c_float).collect())
}
