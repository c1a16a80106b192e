//! Large-`m` predictions for the spectrum of the `m = n` pencil.
//!
//! In the scaled coordinates `lambda = u + i v / N` the non-real eigenvalues
//! approach the curve `v = Lambda_0(u)` when `c = 0` and stay under
//! `v = Lambda_c(u)` when `0 < c < 2`. `Lambda_c` is defined implicitly, as
//! the point where two Apollonius circles in the `F`-plane stop meeting.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// `lambda = u + i v / N`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScaledEigenvalue {
    pub u: f64,
    pub v: f64,
}

impl ScaledEigenvalue {
    pub fn from_lambda(lambda: Complex64, size: usize) -> Self {
        ScaledEigenvalue {
            u: lambda.re,
            v: lambda.im * size as f64,
        }
    }

    pub fn to_lambda(self, size: usize) -> Complex64 {
        Complex64::new(self.u, self.v / size as f64)
    }
}

/// Leading-order data of `z = e^{i theta + s/m}`, `w = e^{i phi + t/m}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AnsatzParams {
    pub theta: f64,
    pub phi: f64,
    pub s0: f64,
    pub t0: f64,
}

impl AnsatzParams {
    /// Requires `|u - c| < 2`, `|u + c| < 2` and `v > 0`.
    pub fn from_scaled(u: f64, v: f64, c: f64) -> Result<Self> {
        let (a, b) = (u - c, u + c);
        if !(a.abs() < 2.0 && b.abs() < 2.0) {
            return Err(Error::Domain(format!("u -+ c must lie in (-2, 2), got {a}, {b}")));
        }
        if !(v > 0.0) {
            return Err(Error::Domain(format!("v must be positive, got {v}")));
        }
        Ok(AnsatzParams {
            theta: (a / 2.0).acos(),
            phi: (b / 2.0).acos(),
            s0: v / (2.0 * band_width(a)),
            t0: v / (2.0 * band_width(b)),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CircleParams {
    pub center: Complex64,
    pub radius: f64,
}

/// One point of an asymptotic curve; `lambda_value` is `+inf` where the curve
/// leaves the inversion bracket.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurveSample {
    pub u: f64,
    pub lambda_value: f64,
}

/// `sqrt(4 - x^2)` without cancellation near `|x| = 2`.
fn band_width(x: f64) -> f64 {
    ((2.0 - x) * (2.0 + x)).sqrt()
}

/// `Lambda_0(u) = sqrt(4 - u^2) log tan(pi/4 + arccos(u/2)/2)`, for `0 < u < 2`.
///
/// `log tan(pi/4 + x/2) = atanh(sin x)`, and `sin(arccos(u/2)) = sqrt(4 - u^2)/2`.
pub fn lambda0(u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 2.0) {
        return Err(Error::Domain(format!("Lambda_0 needs 0 < u < 2, got {u}")));
    }
    let width = band_width(u);
    let x = width / 2.0;
    let atanh = if x < 0.5 {
        x.atanh()
    } else {
        // 1 - x = (u^2/4) / (1 + x)
        let one_minus_x = (u * u / 4.0) / (1.0 + x);
        0.5 * ((1.0 + x) / one_minus_x).ln()
    };
    Ok(width * atanh)
}

/// The positive predicted real parts `2 cos(2 pi k / (2m + 1))`, `k = 1..=m/2`.
pub fn c0_grid(mm: usize) -> Result<Vec<f64>> {
    if mm < 2 {
        return Err(Error::Domain(format!("m must be at least 2, got {mm}")));
    }
    let denom = (2 * mm + 1) as f64;
    Ok((1..=mm / 2)
        .map(|k| 2.0 * (2.0 * PI * k as f64 / denom).cos())
        .collect())
}

/// `log(m) / m`, the leading-order height of the imaginary pair for odd `m`.
pub fn imag_pair_prediction(mm: usize) -> Result<f64> {
    if mm == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    if mm % 2 == 0 {
        return Err(Error::NoImaginaryRoot(mm));
    }
    Ok((mm as f64).ln() / mm as f64)
}

/// `max(log m / m, log n / n)`.
pub fn crude_bound(mm: usize, nn: usize) -> Result<f64> {
    if mm < 2 || nn < 2 {
        return Err(Error::Domain(format!("m and n must be at least 2, got {mm}, {nn}")));
    }
    let f = |k: usize| (k as f64).ln() / k as f64;
    Ok(f(mm).max(f(nn)))
}

/// The Apollonius circle `{zeta : |zeta - 1/xi| = kappa |zeta - xi|}`.
pub fn fractional_circle(xi: Complex64, kappa: f64) -> Result<CircleParams> {
    if xi.norm() == 0.0 || !xi.is_finite() {
        return Err(Error::Domain("xi must be finite and non-zero".into()));
    }
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::Domain(format!("kappa must be positive, got {kappa}")));
    }
    if kappa == 1.0 {
        return Err(Error::DegenerateCircle);
    }
    let spread = kappa - 1.0 / kappa;
    Ok(CircleParams {
        center: (kappa * xi - (kappa * xi).inv()) / spread,
        radius: ((xi - xi.inv()) / spread).norm(),
    })
}

fn check_band(c: f64, u: f64) -> Result<()> {
    if !(0.0..2.0).contains(&c) {
        return Err(Error::Domain(format!("c must lie in [0, 2), got {c}")));
    }
    if !(u > 0.0 && u < 2.0 - c) {
        return Err(Error::Domain(format!("u must lie in (0, {}), got {u}", 2.0 - c)));
    }
    Ok(())
}

/// `X_{c,u}(v) = tanh(v / (2 sqrt(4 - (u-c)^2))) tanh(v / (2 sqrt(4 - (u+c)^2)))`.
pub fn x_cu(c: f64, u: f64, v: f64) -> Result<f64> {
    check_band(c, u)?;
    if !(v > 0.0) {
        return Err(Error::Domain(format!("v must be positive, got {v}")));
    }
    Ok(x_cu_unchecked(c, u, v))
}

fn x_cu_unchecked(c: f64, u: f64, v: f64) -> f64 {
    (v / (2.0 * band_width(u - c))).tanh() * (v / (2.0 * band_width(u + c))).tanh()
}

/// `tan(arccos((u-c)/2) / 2) tan(arccos((u+c)/2) / 2)`, the level `X_{c,u}`
/// must reach.
pub fn lambda_c_target(c: f64, u: f64) -> Result<f64> {
    check_band(c, u)?;
    Ok(half_angle_tan(u - c) * half_angle_tan(u + c))
}

/// `tan(arccos(x/2) / 2) = sqrt((2 - x) / (2 + x))`.
fn half_angle_tan(x: f64) -> f64 {
    ((2.0 - x) / (2.0 + x)).sqrt()
}

/// Largest `v` tried before `Lambda_c` is reported as infinite.
pub const LAMBDA_C_CAP: f64 = 1e3;

/// `Lambda_c(u) = X_{c,u}^{-1}(T)`; `+inf` when the root lies beyond
/// [`LAMBDA_C_CAP`].
pub fn lambda_c(c: f64, u: f64) -> Result<f64> {
    let target = lambda_c_target(c, u)?;
    let x = |v: f64| x_cu_unchecked(c, u, v);
    let mut lo = 0.0;
    let mut hi = 1.0;
    while x(hi) < target {
        lo = hi;
        hi *= 2.0;
        if hi > LAMBDA_C_CAP {
            return Ok(f64::INFINITY);
        }
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if x(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `Lambda_0` for `c = 0` and `Lambda_c` for `0 < c < 2`, sampled at
/// `samples` uniform points of the open domain trimmed by `1e-6` at each end.
pub fn curve_samples(c: f64, samples: usize) -> Result<Vec<CurveSample>> {
    if !(0.0..2.0).contains(&c) {
        return Err(Error::Domain(format!("curves exist for 0 <= c < 2, got {c}")));
    }
    if samples < 2 {
        return Err(Error::Domain("at least 2 samples are needed".into()));
    }
    const TRIM: f64 = 1e-6;
    let (lo, hi) = (TRIM, 2.0 - c - TRIM);
    let step = (hi - lo) / (samples - 1) as f64;
    (0..samples)
        .map(|k| {
            let u = if k + 1 == samples { hi } else { lo + step * k as f64 };
            let lambda_value = if c == 0.0 { lambda0(u)? } else { lambda_c(c, u)? };
            Ok(CurveSample { u, lambda_value })
        })
        .collect()
}

/// The two circles whose intersection decides whether `(theta, phi, s0, t0)`
/// can come from an eigenvalue.
pub fn ansatz_circles(theta: f64, phi: f64, s0: f64, t0: f64) -> Result<(CircleParams, CircleParams)> {
    let first = fractional_circle(Complex64::from_polar(1.0, theta), (2.0 * s0).exp())?;
    let second = fractional_circle(-Complex64::from_polar(1.0, -phi), (2.0 * t0).exp())?;
    Ok((first, second))
}

/// Both evaluations of the circle-intersection criterion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntersectCheck {
    /// `|a_1 - a_2|^2 <= (rho_1 + rho_2)^2`
    pub by_circles: bool,
    /// `tanh(s0) tanh(t0) <= tan(theta/2) tan(phi/2)`
    pub by_tangents: bool,
}

impl IntersectCheck {
    pub fn agree(&self) -> bool {
        self.by_circles == self.by_tangents
    }
}

/// Whether the two ansatz circles meet, computed from their centres and radii
/// and from the closed form. The closed form assumes `theta + phi <= pi`,
/// which holds for `u >= 0`.
pub fn intersect_condition(theta: f64, phi: f64, s0: f64, t0: f64) -> Result<IntersectCheck> {
    for (name, angle) in [("theta", theta), ("phi", phi)] {
        if !(angle > 0.0 && angle < PI) {
            return Err(Error::Domain(format!("{name} must lie in (0, pi), got {angle}")));
        }
    }
    for (name, x) in [("s0", s0), ("t0", t0)] {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("{name} must be positive, got {x}")));
        }
    }
    let (a, b) = ansatz_circles(theta, phi, s0, t0)?;
    let reach = a.radius + b.radius;
    Ok(IntersectCheck {
        by_circles: (a.center - b.center).norm_sqr() <= reach * reach,
        by_tangents: s0.tanh() * t0.tanh() <= (theta / 2.0).tan() * (phi / 2.0).tan(),
    })
}

/// `(Z - sqrt(Z^2 - 4)) / 2` with `Z = (2 + 2 cos theta cos phi) / (sin theta sin phi)`,
/// the smaller root of `X + 1/X = Z`.
pub fn intersect_threshold(theta: f64, phi: f64) -> f64 {
    let zz = (2.0 + 2.0 * theta.cos() * phi.cos()) / (theta.sin() * phi.sin());
    2.0 / (zz + (zz * zz - 4.0).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda0_examples() {
        let r2 = 2f64.sqrt();
        assert!((lambda0(r2).unwrap() - r2 * (1.0 + r2).ln()).abs() < 1e-14);
        assert!((lambda0(r2).unwrap() - 1.24645).abs() < 1e-5);
        let near = lambda0(2.0 - 1e-8).unwrap();
        assert!(near > 0.0 && near < 1e-7);
        assert!(lambda0(1e-6).unwrap() > 10.0);
        assert!(lambda0(0.0).is_err());
        assert!(lambda0(2.0).is_err());
        assert!(lambda0(-0.5).is_err());
    }

    #[test]
    fn lambda0_is_log_tan() {
        for &u in &[0.05f64, 0.4, 1.0, 1.7, 1.99] {
            let direct = (4.0 - u * u).sqrt() * (PI / 4.0 + 0.5 * (u / 2.0).acos()).tan().ln();
            assert!((lambda0(u).unwrap() - direct).abs() < 1e-12 * direct.max(1.0));
        }
    }

    #[test]
    fn grid_examples() {
        let g = c0_grid(2).unwrap();
        assert_eq!(g.len(), 1);
        assert!((g[0] - 2.0 * (2.0 * PI / 5.0).cos()).abs() < 1e-15);
        let g = c0_grid(5).unwrap();
        assert_eq!(g.len(), 2);
        assert!((g[1] - 2.0 * (4.0 * PI / 11.0).cos()).abs() < 1e-15);
        let g = c0_grid(4).unwrap();
        assert!(g.len() == 2 && g.iter().all(|&x| x > 0.0 && x < 2.0));
        assert!(c0_grid(1).is_err());
    }

    #[test]
    fn imaginary_pair_and_crude_bound() {
        assert!((imag_pair_prediction(501).unwrap() - 0.012410).abs() < 5e-6);
        assert!(imag_pair_prediction(2).is_err());
        assert_eq!(crude_bound(100, 100).unwrap(), 100f64.ln() / 100.0);
        assert_eq!(crude_bound(10, 1_000_000).unwrap(), 10f64.ln() / 10.0);
        assert!(crude_bound(1, 5).is_err());
    }

    #[test]
    fn circle_examples() {
        let c = fractional_circle(Complex64::new(2.0, 0.0), 2.0).unwrap();
        assert!((c.center - Complex64::new(2.5, 0.0)).norm() < 1e-15);
        assert!((c.radius - 1.0).abs() < 1e-15);

        let (theta, s0) = (0.7f64, 0.3f64);
        let c = fractional_circle(Complex64::from_polar(1.0, theta), (2.0 * s0).exp()).unwrap();
        let expect = Complex64::new(theta.cos(), theta.sin() / (2.0 * s0).tanh());
        assert!((c.center - expect).norm() < 1e-14);
        assert!((c.radius - theta.sin() / (2.0 * s0).sinh()).abs() < 1e-14);

        assert_eq!(
            fractional_circle(Complex64::new(1.0, 1.0), 1.0),
            Err(Error::DegenerateCircle)
        );
        assert!(fractional_circle(Complex64::new(0.0, 0.0), 2.0).is_err());
    }

    #[test]
    fn x_cu_limits() {
        let c = 5f64.sqrt() / 2.0;
        assert!(x_cu(c, 0.5, 1e-9).unwrap() < 1e-17);
        assert!((x_cu(c, 0.5, 1e4).unwrap() - 1.0).abs() < 1e-15);
        let mut prev = 0.0;
        for k in 1..200 {
            let x = x_cu(c, 1.0 - c + 0.5, k as f64 * 0.1).unwrap();
            assert!(x > prev && x < 1.0);
            prev = x;
        }
        assert!(x_cu(c, 0.9, 1.0).is_err());
        assert!(x_cu(2.0, 0.1, 1.0).is_err());
    }

    #[test]
    fn lambda_c_limits() {
        let c = 5f64.sqrt() / 2.0;
        let top = 2.0 - c;
        assert!(lambda_c(c, top - 1e-9).unwrap() < 1e-3);
        assert!(lambda_c(c, 1e-4).unwrap() > 5.0);
        let mut prev = f64::INFINITY;
        for k in 1..100 {
            let val = lambda_c(c, top * k as f64 / 100.0).unwrap();
            assert!(val.is_finite() && val < prev);
            prev = val;
        }
        assert!(lambda_c(c, top).is_err());
    }

    #[test]
    fn lambda_c_reduces_to_lambda0() {
        for &u in &[0.2, 0.9, 1.5] {
            assert!((lambda_c(0.0, u).unwrap() - lambda0(u).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn curve_sampling() {
        let s = curve_samples(0.0, 2000).unwrap();
        assert_eq!(s.len(), 2000);
        assert!((s[0].u - 1e-6).abs() < 1e-18 && (s[1999].u - (2.0 - 1e-6)).abs() < 1e-15);
        let c = 5f64.sqrt() / 2.0;
        let s = curve_samples(c, 50).unwrap();
        assert!(s.iter().all(|p| p.u > 0.0 && p.u < 2.0 - c));
        assert!(curve_samples(2.5, 10).is_err());
    }

    #[test]
    fn intersect_examples() {
        let half = PI / 2.0;
        let far = intersect_condition(half, half, 8.0, 8.0).unwrap();
        assert!(far.by_circles && far.by_tangents);
        let near = intersect_condition(half, half, 1e-3, 1e-3).unwrap();
        assert!(near.by_circles && near.by_tangents);
        let apart = intersect_condition(0.5, 0.6, 3.0, 3.0).unwrap();
        assert!(!apart.by_circles && !apart.by_tangents);
    }

    #[test]
    fn threshold_is_min_of_tangent_product_and_reciprocal() {
        for &(theta, phi) in &[(0.3, 0.9), (1.2, 1.9), (2.0, 2.5)] {
            let t = (theta / 2.0f64).tan() * (phi / 2.0f64).tan();
            assert!((intersect_threshold(theta, phi) - t.min(1.0 / t)).abs() < 1e-12);
        }
    }
}
