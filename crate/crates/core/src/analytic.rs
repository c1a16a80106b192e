//! The `(z, w)` substitution and the functions built on it.
//!
//! With `lambda - c = z + 1/z` and `lambda + c = w + 1/w`, the determinant of
//! the pencil becomes a Laurent polynomial in `z` and `w`. Everything here is
//! written so that `|z| > 1` with large exponents never overflows: powers are
//! taken of the root outside the unit disc and divided out up front.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scaled::ScaledValue;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Relative tolerance for calling a root unimodular.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Where the selected roots of the two quadratics sit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// both `|z| > 1` and `|w| > 1`, lambda non-real
    OutsideUnit,
    /// `|z| = 1` or `|w| = 1` within [`BOUNDARY_TOL`]
    Boundary,
    /// lambda real and both roots real, off the unit circle
    RealBranch,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZwPair {
    pub z: Complex64,
    pub w: Complex64,
    pub branch_note: Branch,
}

/// Root of `x^2 - s x + 1 = 0` with `|x| >= 1`; on the band `s in [-2, 2]`
/// the root with non-negative imaginary part.
fn outer_root(s: Complex64) -> Complex64 {
    if s.im == 0.0 && s.re.abs() <= 2.0 {
        return Complex64::new(s.re, (4.0 - s.re * s.re).sqrt()) * 0.5;
    }
    let q = (s * s - 4.0).sqrt();
    let plus = s + q;
    let minus = s - q;
    if plus.norm() >= minus.norm() {
        plus * 0.5
    } else {
        minus * 0.5
    }
}

fn on_unit_circle(x: Complex64) -> bool {
    (x.norm() - 1.0).abs() <= BOUNDARY_TOL
}

/// Solves `z^2 - (lambda - c) z + 1 = 0` and `w^2 - (lambda + c) w + 1 = 0`,
/// keeping the roots with `|z|, |w| >= 1`.
pub fn lambda_to_zw(lambda: Complex64, c: f64) -> ZwPair {
    let z = outer_root(lambda - c);
    let w = outer_root(lambda + c);
    let branch_note = if on_unit_circle(z) || on_unit_circle(w) {
        Branch::Boundary
    } else if lambda.im == 0.0 {
        Branch::RealBranch
    } else {
        Branch::OutsideUnit
    };
    ZwPair { z, w, branch_note }
}

/// `c + z + 1/z`.
pub fn zw_to_lambda(z: Complex64, c: f64) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain("z = 0".into()));
    }
    Ok(c + z + z.inv())
}

fn nonzero(name: &str, x: Complex64) -> Result<()> {
    if x.re == 0.0 && x.im == 0.0 {
        Err(Error::Domain(format!("{name} = 0")))
    } else if !x.is_finite() {
        Err(Error::Domain(format!("{name} is not finite")))
    } else {
        Ok(())
    }
}

/// `x` or `1/x`, whichever lies outside the unit disc, and the sign picked up
/// by `x^k - x^-k` under the swap.
fn outside(x: Complex64) -> (Complex64, f64) {
    if x.norm() >= 1.0 {
        (x, 1.0)
    } else {
        (x.inv(), -1.0)
    }
}

/// `1 - X^{-2k}` for `|X| >= 1`.
fn one_minus_inv_pow(x: Complex64, k: usize) -> Complex64 {
    1.0 - inv_powu(x, 2 * k)
}

fn inv_powu(x: Complex64, k: usize) -> Complex64 {
    let inv = x.inv();
    match u32::try_from(k) {
        Ok(k) => inv.powu(k),
        // |inv| <= 1 and the exponent is astronomically large
        Err(_) => ScaledValue::powu(inv, k as u64).to_complex(),
    }
}

/// `beta_{m,n}(z, w) / (Z^{m+1} W^{n+1})`, where `Z`, `W` are `z`, `w` or
/// their reciprocals, whichever is outside the unit disc. Bounded by 4 in
/// modulus.
pub fn beta_normalized(mm: usize, nn: usize, z: Complex64, w: Complex64) -> Result<Complex64> {
    nonzero("z", z)?;
    nonzero("w", w)?;
    let (zo, sz) = outside(z);
    let (wo, sw) = outside(w);
    let lead = one_minus_inv_pow(zo, mm + 1) * one_minus_inv_pow(wo, nn + 1);
    let tail = (zo * wo).inv() * one_minus_inv_pow(zo, mm) * one_minus_inv_pow(wo, nn);
    Ok((lead + tail) * (sz * sw))
}

/// `beta_{m,n}(z, w) = (z^{m+1} - z^{-m-1})(w^{n+1} - w^{-n-1}) + (z^m - z^{-m})(w^n - w^{-n})`
/// with a detached exponent.
pub fn beta_scaled(mm: usize, nn: usize, z: Complex64, w: Complex64) -> Result<ScaledValue> {
    let normalized = beta_normalized(mm, nn, z, w)?;
    let (zo, _) = outside(z);
    let (wo, _) = outside(w);
    Ok(ScaledValue::from_complex(normalized)
        * ScaledValue::powu(zo, mm as u64 + 1)
        * ScaledValue::powu(wo, nn as u64 + 1))
}

/// `beta_{m,n}(z, w)` as a plain complex number (infinite once it leaves the
/// binary64 range; use [`beta_scaled`] or [`beta_normalized`] there).
pub fn beta(mm: usize, nn: usize, z: Complex64, w: Complex64) -> Result<Complex64> {
    Ok(beta_scaled(mm, nn, z, w)?.to_complex())
}

/// `gamma_{m,n}(z, w) = beta_{m,n}(z, w) - 2 (z^m - z^{-m})(w^n - w^{-n})`,
/// i.e. `(z^{m+1} - z^{-m-1})(w^{n+1} - w^{-n-1}) - (z^m - z^{-m})(w^n - w^{-n})`.
pub fn gamma_scaled(mm: usize, nn: usize, z: Complex64, w: Complex64) -> Result<ScaledValue> {
    nonzero("z", z)?;
    nonzero("w", w)?;
    let (zo, sz) = outside(z);
    let (wo, sw) = outside(w);
    let lead = one_minus_inv_pow(zo, mm + 1) * one_minus_inv_pow(wo, nn + 1);
    let tail = (zo * wo).inv() * one_minus_inv_pow(zo, mm) * one_minus_inv_pow(wo, nn);
    Ok(ScaledValue::from_complex((lead - tail) * (sz * sw))
        * ScaledValue::powu(zo, mm as u64 + 1)
        * ScaledValue::powu(wo, nn as u64 + 1))
}

pub fn gamma(mm: usize, nn: usize, z: Complex64, w: Complex64) -> Result<Complex64> {
    Ok(gamma_scaled(mm, nn, z, w)?.to_complex())
}

/// `F_m(z) = (z^{m+1} - z^{-m-1}) / (z^m - z^{-m})`.
///
/// Invariant under `z -> 1/z`; evaluated as `(Z - Z^{-2m-1}) / (1 - Z^{-2m})`
/// with `|Z| >= 1`.
pub fn f_ratio(mm: usize, z: Complex64) -> Result<Complex64> {
    nonzero("z", z)?;
    if mm == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let (zo, _) = outside(z);
    let den = one_minus_inv_pow(zo, mm);
    if den.norm() <= 1e-14 {
        return Err(Error::RatioUndefined { m: mm, z });
    }
    let num = zo - inv_powu(zo, 2 * mm + 1);
    Ok(num / den)
}

/// A point of the extended complex plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Extended {
    Finite(Complex64),
    Infinity,
}

impl Extended {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            Extended::Finite(z) => Some(z),
            Extended::Infinity => None,
        }
    }

    /// `1/x` with `1/0 = inf` and `1/inf = 0`.
    pub fn recip(self) -> Extended {
        match self {
            Extended::Infinity => Extended::Finite(Complex64::new(0.0, 0.0)),
            Extended::Finite(z) if z.re == 0.0 && z.im == 0.0 => Extended::Infinity,
            Extended::Finite(z) => Extended::Finite(z.inv()),
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(z) => write!(f, "{z}"),
            Extended::Infinity => f.write_str("inf"),
        }
    }
}

/// `F~_1(zeta) = zeta`, `F~_{k+1}(zeta) = zeta - 1/F~_k(zeta)`.
pub fn f_tilde(mm: usize, zeta: Complex64) -> Result<Extended> {
    if mm == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let mut acc = Extended::Finite(zeta);
    for _ in 1..mm {
        acc = match acc.recip() {
            Extended::Infinity => Extended::Infinity,
            Extended::Finite(r) => Extended::Finite(zeta - r),
        };
    }
    Ok(acc)
}

/// `G_m(s) = e^s tanh(m s)`, a lower bound for `|F_m(z)|` at `|z| = e^s`.
pub fn g_bound(mm: usize, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("s must be positive, got {s}")));
    }
    Ok(s.exp() * (mm as f64 * s).tanh())
}

fn powu_usize(z: Complex64, k: usize) -> Complex64 {
    match u32::try_from(k) {
        Ok(k) => z.powu(k),
        Err(_) => ScaledValue::powu(z, k as u64).to_complex(),
    }
}

/// `(z + i) z^{2m+1} - i (z - i)`.
pub fn r1(mm: usize, z: Complex64) -> Complex64 {
    (z + I) * powu_usize(z, 2 * mm + 1) - I * (z - I)
}

/// `(z - i) z^{2m+1} + i (z + i)`.
pub fn r2(mm: usize, z: Complex64) -> Complex64 {
    (z - I) * powu_usize(z, 2 * mm + 1) + I * (z + I)
}

/// `f_m(y) = (y - 1) y^{2m} - 1 - 1/y` and its derivative.
fn imag_axis_fn(mm: usize, y: f64) -> (f64, f64) {
    let p = y.powi(2 * mm as i32);
    let f = (y - 1.0) * p - 1.0 - 1.0 / y;
    let df = p + 2.0 * mm as f64 * (y - 1.0) * p / y + 1.0 / (y * y);
    (f, df)
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The root in `(1, inf)` of `f_m(y) = (y - 1) y^{2m} - 1 - 1/y` for odd `m`.
/// `z = i y` then gives the eigenvalue `i (y - 1/y)` of the `c = 0`, `n = m`
/// pencil.
pub fn imag_axis_root(mm: usize) -> Result<f64> {
    if mm == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    if mm % 2 == 0 {
        return Err(Error::NoImaginaryRoot(mm));
    }
    // f_m(1+) = -2 < 0 and f_m(2) = 2^{2m} - 3/2 > 0
    let mut y = bisect(|y| imag_axis_fn(mm, y).0, 1.0 + 1e-12, 2.0);
    for _ in 0..3 {
        let (f, df) = imag_axis_fn(mm, y);
        let next = y - f / df;
        if !(next > 1.0) || imag_axis_fn(mm, next).0.abs() >= f.abs() {
            break;
        }
        y = next;
    }
    Ok(y)
}

/// `g_m(y) / y^{2m+2} = (-1)^m (y^2 - 2) + (2 y^2 - 1) y^{-2m-2}`.
fn n1_fn(mm: usize, y: f64) -> f64 {
    let sign = if mm % 2 == 0 { 1.0 } else { -1.0 };
    sign * (y * y - 2.0) + (2.0 * y * y - 1.0) * y.powi(-(2 * mm as i32 + 2))
}

/// The root in `(5/4, 3/2)` of `g_m(y) = (-1)^m y^{2m+4} - 2(-1)^m y^{2m+2} + 2y^2 - 1`,
/// for `m > 3`. `i (y - 1/y)` is then an eigenvalue of the `n = 1`, `c = 0`
/// pencil.
pub fn n1_root(mm: usize) -> Result<f64> {
    if mm <= 3 {
        return Err(Error::Domain(format!("m must exceed 3, got {mm}")));
    }
    Ok(bisect(|y| n1_fn(mm, y), 1.25, 1.5))
}
