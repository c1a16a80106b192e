//! Double-double ("binary128-lite") real and complex arithmetic.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`,
//! giving about 106 bits of significand. Only the operations the determinant
//! recurrence needs are provided.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::scaled::pow2;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Exact scaling by `2^k`, `|k| <= 1022`.
    #[inline]
    pub fn scale_pow2(self, k: i32) -> Self {
        let f = pow2(k);
        DoubleDouble {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        DoubleDouble::from_f64(x)
    }
}

impl Add for DoubleDouble {
    type Output = DoubleDouble;

    #[inline]
    fn add(self, rhs: DoubleDouble) -> DoubleDouble {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = DoubleDouble;

    #[inline]
    fn neg(self) -> DoubleDouble {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = DoubleDouble;

    #[inline]
    fn sub(self, rhs: DoubleDouble) -> DoubleDouble {
        self + (-rhs)
    }
}

impl Mul for DoubleDouble {
    type Output = DoubleDouble;

    #[inline]
    fn mul(self, rhs: DoubleDouble) -> DoubleDouble {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

/// Complex number with double-double parts.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ComplexDD {
    pub re: DoubleDouble,
    pub im: DoubleDouble,
}

impl ComplexDD {
    pub const ZERO: ComplexDD = ComplexDD {
        re: DoubleDouble::ZERO,
        im: DoubleDouble::ZERO,
    };
    pub const ONE: ComplexDD = ComplexDD {
        re: DoubleDouble::ONE,
        im: DoubleDouble::ZERO,
    };

    pub fn from_c64(z: Complex64) -> Self {
        ComplexDD {
            re: z.re.into(),
            im: z.im.into(),
        }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    #[inline]
    pub fn scale_pow2(self, k: i32) -> Self {
        ComplexDD {
            re: self.re.scale_pow2(k),
            im: self.im.scale_pow2(k),
        }
    }

    /// `|re| + |im|` of the leading parts.
    #[inline]
    pub fn l1_hi(self) -> f64 {
        self.re.hi.abs() + self.im.hi.abs()
    }
}

impl Add for ComplexDD {
    type Output = ComplexDD;

    #[inline]
    fn add(self, rhs: ComplexDD) -> ComplexDD {
        ComplexDD {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for ComplexDD {
    type Output = ComplexDD;

    #[inline]
    fn sub(self, rhs: ComplexDD) -> ComplexDD {
        ComplexDD {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Neg for ComplexDD {
    type Output = ComplexDD;

    #[inline]
    fn neg(self) -> ComplexDD {
        ComplexDD {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for ComplexDD {
    type Output = ComplexDD;

    #[inline]
    fn mul(self, rhs: ComplexDD) -> ComplexDD {
        ComplexDD {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_keeps_low_order_bits() {
        let a = DoubleDouble::from_f64(1.0);
        let tiny = DoubleDouble::from_f64(1e-20);
        let s = (a + tiny) - a;
        assert_eq!(s.to_f64(), 1e-20);
    }

    #[test]
    fn product_is_exact_for_two_doubles() {
        let x = 1.0 + f64::EPSILON;
        let p = DoubleDouble::from_f64(x) * DoubleDouble::from_f64(x);
        // (1 + e)^2 = 1 + 2e + e^2
        assert_eq!(p.hi, 1.0 + 2.0 * f64::EPSILON);
        assert_eq!(p.lo, f64::EPSILON * f64::EPSILON);
    }

    #[test]
    fn complex_square_of_i() {
        let i = ComplexDD::from_c64(Complex64::new(0.0, 1.0));
        assert_eq!((i * i).to_c64(), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn sqrt2_squared_residual_visible() {
        // fl(sqrt 2)^2 - 2 is about 2.7e-16 and must not round away
        let r = std::f64::consts::SQRT_2;
        let d = DoubleDouble::from_f64(r) * DoubleDouble::from_f64(r) - DoubleDouble::from_f64(2.0);
        let exact = r.mul_add(r, -2.0);
        assert_eq!(d.to_f64(), exact);
        assert!(d.to_f64() != 0.0);
    }
}
