//! Complex numbers with a detached binary exponent.
//!
//! Determinants of `N x N` pencils grow like `|z|^N` off the real axis, which
//! leaves the binary64 range for `N` in the low thousands. A [`ScaledValue`]
//! stores `mantissa * 2^exponent` with the exponent as a plain integer, so
//! products and ratios of such values never overflow.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// Multiply `x` by `2^k` exactly (barring subnormal results).
pub fn ldexp(x: f64, k: i64) -> f64 {
    let mut x = x;
    let mut k = k;
    while k > 1000 {
        x *= pow2(1000);
        k -= 1000;
    }
    while k < -1000 {
        x *= pow2(-1000);
        k += 1000;
    }
    x * pow2(k as i32)
}

/// `2^k` for `-1022 <= k <= 1023`.
#[inline]
pub(crate) fn pow2(k: i32) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((k + 1023) as u64) << 52)
}

#[inline]
pub(crate) fn ldexp_c(z: Complex64, k: i64) -> Complex64 {
    Complex64::new(ldexp(z.re, k), ldexp(z.im, k))
}

/// A complex value `mantissa * 2^exponent`.
///
/// After normalization `1 <= |mantissa| < 2`, or the mantissa is zero and the
/// exponent is zero.
#[derive(Clone, Copy, PartialEq)]
pub struct ScaledValue {
    mantissa: Complex64,
    exponent: i64,
}

impl ScaledValue {
    pub const ZERO: ScaledValue = ScaledValue {
        mantissa: Complex64::new(0.0, 0.0),
        exponent: 0,
    };

    pub const ONE: ScaledValue = ScaledValue {
        mantissa: Complex64::new(1.0, 0.0),
        exponent: 0,
    };

    /// Builds `mantissa * 2^exponent` and normalizes it.
    pub fn new(mantissa: Complex64, exponent: i64) -> Self {
        ScaledValue { mantissa, exponent }.normalize()
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z, 0)
    }

    pub fn from_real(x: f64) -> Self {
        Self::new(Complex64::new(x, 0.0), 0)
    }

    pub fn mantissa(&self) -> Complex64 {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.re == 0.0 && self.mantissa.im == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.mantissa.re.is_finite() && self.mantissa.im.is_finite()
    }

    /// Rescales by powers of two so that `1 <= |mantissa| < 2`. The
    /// represented value is unchanged.
    pub fn normalize(self) -> Self {
        if self.is_zero() {
            return Self::ZERO;
        }
        if !self.is_finite() {
            return self;
        }
        let modulus = self.mantissa.norm();
        let shift = if modulus.is_finite() && modulus > 0.0 {
            modulus.log2().floor() as i64
        } else {
            // hypot overflowed: both parts are near f64::MAX
            1023
        };
        let mut mantissa = ldexp_c(self.mantissa, -shift);
        let mut exponent = self.exponent + shift;
        // log2().floor() may be off by one at the boundaries
        let m = mantissa.norm();
        if m >= 2.0 {
            mantissa *= 0.5;
            exponent += 1;
        } else if m < 1.0 {
            mantissa *= 2.0;
            exponent -= 1;
        }
        ScaledValue { mantissa, exponent }
    }

    /// The plain complex value; overflows to infinity or underflows to zero
    /// when the exponent is out of the binary64 range.
    pub fn to_complex(&self) -> Complex64 {
        ldexp_c(self.mantissa, self.exponent)
    }

    /// `log2 |value|`, `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.mantissa.norm().log2() + self.exponent as f64
        }
    }

    pub fn abs(&self) -> f64 {
        ldexp(self.mantissa.norm(), self.exponent)
    }

    pub fn conj(&self) -> Self {
        ScaledValue {
            mantissa: self.mantissa.conj(),
            exponent: self.exponent,
        }
    }

    /// `self / other` as a plain complex number. Infinite when `other` is
    /// zero and `self` is not; zero when `self` is zero.
    pub fn ratio(&self, other: &ScaledValue) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        if other.is_zero() {
            return Complex64::new(f64::INFINITY, 0.0);
        }
        ldexp_c(self.mantissa / other.mantissa, self.exponent - other.exponent)
    }

    /// `z^k` for a non-negative integer `k`, by repeated squaring.
    pub fn powu(z: Complex64, k: u64) -> Self {
        let mut base = ScaledValue::from_complex(z);
        let mut acc = ScaledValue::ONE;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            k >>= 1;
            if k > 0 {
                base = base * base;
            }
        }
        acc
    }
}

impl Default for ScaledValue {
    fn default() -> Self {
        Self::ZERO
    }
}

impl fmt::Debug for ScaledValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)*2^{}", self.mantissa.re, self.mantissa.im, self.exponent)
    }
}

impl fmt::Display for ScaledValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Mul for ScaledValue {
    type Output = ScaledValue;

    fn mul(self, rhs: ScaledValue) -> ScaledValue {
        ScaledValue::new(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Mul<Complex64> for ScaledValue {
    type Output = ScaledValue;

    fn mul(self, rhs: Complex64) -> ScaledValue {
        self * ScaledValue::from_complex(rhs)
    }
}

impl Div for ScaledValue {
    type Output = ScaledValue;

    fn div(self, rhs: ScaledValue) -> ScaledValue {
        ScaledValue::new(self.mantissa / rhs.mantissa, self.exponent - rhs.exponent)
    }
}

impl Neg for ScaledValue {
    type Output = ScaledValue;

    fn neg(self) -> ScaledValue {
        ScaledValue {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Add for ScaledValue {
    type Output = ScaledValue;

    fn add(self, rhs: ScaledValue) -> ScaledValue {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = match self.exponent.cmp(&rhs.exponent) {
            Ordering::Less => (rhs, self),
            _ => (self, rhs),
        };
        let gap = big.exponent - small.exponent;
        if gap > 1100 {
            return big;
        }
        ScaledValue::new(big.mantissa + ldexp_c(small.mantissa, -gap), big.exponent)
    }
}

impl Sub for ScaledValue {
    type Output = ScaledValue;

    fn sub(self, rhs: ScaledValue) -> ScaledValue {
        self + (-rhs)
    }
}

impl std::iter::Product for ScaledValue {
    fn product<I: Iterator<Item = ScaledValue>>(iter: I) -> Self {
        iter.fold(ScaledValue::ONE, |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_mantissa_in_unit_octave() {
        for &x in &[1.0, 1.5, 2.0, 3.999, 1e-300, 7e250, -0.75] {
            let s = ScaledValue::from_complex(Complex64::new(x, 0.3 * x));
            let m = s.mantissa().norm();
            assert!((1.0..2.0).contains(&m), "{x}: |mantissa| = {m}");
            let back = s.to_complex();
            assert_eq!(back, Complex64::new(x, 0.3 * x));
        }
    }

    #[test]
    fn zero_is_canonical() {
        let z = ScaledValue::new(Complex64::new(0.0, 0.0), 17);
        assert!(z.is_zero());
        assert_eq!(z.exponent(), 0);
        assert_eq!(z.log2_abs(), f64::NEG_INFINITY);
    }

    #[test]
    fn product_beyond_binary64_range() {
        let big = ScaledValue::powu(Complex64::new(0.0, 3.0), 1000);
        // |(3i)^1000| = 3^1000, log2 = 1000 log2 3
        assert!((big.log2_abs() - 1000.0 * 3f64.log2()).abs() < 1e-9);
        // i^1000 = 1
        assert!(big.mantissa().im.abs() < 1e-10 * big.mantissa().norm());
        assert!(big.to_complex().re.is_infinite());
        let ratio = big.ratio(&ScaledValue::powu(Complex64::new(0.0, 3.0), 999));
        assert!((ratio - Complex64::new(0.0, 3.0)).norm() < 1e-11);
    }

    #[test]
    fn addition_aligns_exponents() {
        let a = ScaledValue::new(Complex64::new(1.5, 0.0), 600);
        let b = ScaledValue::new(Complex64::new(1.0, 0.0), 599);
        let s = a + b;
        assert_eq!(s.exponent(), 601);
        assert_eq!(s.mantissa(), Complex64::new(1.0, 0.0));
        assert!((a - a).is_zero());
    }

    #[test]
    fn ratio_of_zero_and_by_zero() {
        let one = ScaledValue::ONE;
        assert_eq!(ScaledValue::ZERO.ratio(&one), Complex64::new(0.0, 0.0));
        assert!(one.ratio(&ScaledValue::ZERO).re.is_infinite());
    }

    #[test]
    fn ldexp_handles_wide_shifts() {
        assert_eq!(ldexp(1.0, 1023), 2f64.powi(1023));
        assert_eq!(ldexp(ldexp(3.0, -1010), 1010), 3.0);
        assert_eq!(ldexp(1.0, 2000), f64::INFINITY);
        assert_eq!(ldexp(1.0, -1074), f64::from_bits(1));
    }
}
