use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::numkit::exact::{to_c64, GaussRational};
use crate::numkit::C64;

/// Complex amplitude that remembers its exact Gaussian-rational value when it
/// has one. Any operation with an inexact operand yields an inexact result.
#[derive(Clone, PartialEq)]
pub struct Scalar {
    value: C64,
    exact: Option<GaussRational>,
}

impl Scalar {
    pub fn exact(q: GaussRational) -> Self {
        Scalar { value: to_c64(&q), exact: Some(q) }
    }

    pub fn float(value: C64) -> Self {
        Scalar { value, exact: None }
    }

    pub fn int(re: i64, im: i64) -> Self {
        Self::exact(crate::numkit::exact::gq(re, im))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::exact(GaussRational::new(BigRational::new(num.into(), den.into()), BigRational::zero()))
    }

    pub fn zero() -> Self {
        Self::int(0, 0)
    }

    pub fn one() -> Self {
        Self::int(1, 0)
    }

    pub fn i() -> Self {
        Self::int(0, 1)
    }

    pub fn value(&self) -> C64 {
        self.value
    }

    pub fn exact_value(&self) -> Option<&GaussRational> {
        self.exact.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn is_zero(&self) -> bool {
        match &self.exact {
            Some(q) => q.is_zero(),
            None => self.value == C64::new(0.0, 0.0),
        }
    }

    pub fn half(&self) -> Self {
        self * &Scalar::ratio(1, 2)
    }
}

fn combine(a: &Scalar, b: &Scalar, f: impl Fn(C64, C64) -> C64, g: impl Fn(&GaussRational, &GaussRational) -> GaussRational) -> Scalar {
    match (&a.exact, &b.exact) {
        (Some(x), Some(y)) => Scalar::exact(g(x, y)),
        _ => Scalar::float(f(a.value, b.value)),
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        combine(self, rhs, |a, b| a + b, |a, b| a + b)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        combine(self, rhs, |a, b| a - b, |a, b| a - b)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        combine(self, rhs, |a, b| a * b, |a, b| a * b)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.exact {
            Some(q) => Scalar::exact(-q.clone()),
            None => Scalar::float(-self.value),
        }
    }
}

impl From<C64> for Scalar {
    fn from(value: C64) -> Self {
        Scalar::float(value)
    }
}

impl From<GaussRational> for Scalar {
    fn from(q: GaussRational) -> Self {
        Scalar::exact(q)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Writes a literal accepted by the ket grammar, e.g. `(1/2-3i)`.
pub fn render_gauss(q: &GaussRational) -> String {
    match (q.re.is_zero(), q.im.is_zero()) {
        (_, true) => format!("({})", fmt_rational(&q.re)),
        (true, false) => format!("({}i)", fmt_rational(&q.im)),
        (false, false) => {
            let sign = if q.im.is_negative() { "-" } else { "+" };
            format!("({}{}{}i)", fmt_rational(&q.re), sign, fmt_rational(&q.im.abs()))
        }
    }
}

/// Float counterpart of [`render_gauss`]; `{:?}` keeps full precision.
pub fn render_c64(z: C64) -> String {
    if z.im == 0.0 {
        format!("({:?})", z.re)
    } else {
        let sign = if z.im.is_sign_negative() { "-" } else { "+" };
        format!("({:?}{}{:?}i)", z.re, sign, z.im.abs())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(q) => write!(f, "{}", render_gauss(q)),
            None => write!(f, "{}", render_c64(self.value)),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
