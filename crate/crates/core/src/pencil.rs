//! Pencil instances `H_{N;c} - lambda D_{m,n;sigma,tau}` and O(N) evaluation
//! of their characteristic polynomial.
//!
//! `H_{N;c}` is the tridiagonal matrix with `c` on the diagonal and `1` on the
//! two off-diagonals; `D` is diagonal with `sigma` on its first `m` entries and
//! `tau` on the remaining `n`. The determinant of `H - lambda D` obeys the
//! three-term recurrence
//!
//! ```text
//! d_0 = 1,  d_1 = a_1,  d_k = a_k d_{k-1} - d_{k-2},   a_k = c - lambda D_kk
//! ```
//!
//! which is run alongside its lambda-derivative. Both sequences share one
//! power-of-two exponent, so `p / p'` is formed without exponent arithmetic.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::dd::{ComplexDD, DoubleDouble};
use crate::error::{Error, Result};
use crate::scaled::{pow2, ScaledValue};

/// Threshold (`2^512`) above which the recurrence pair is rescaled.
const RESCALE_EXP: i32 = 512;

/// Arithmetic used by the determinant recurrence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Precision {
    /// binary64
    #[default]
    Double,
    /// double-double, about 32 significant digits
    DoubleDouble,
}

/// One problem instance: sizes `m`, `n`, shift `c` and the diagonal of `D`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PencilSpec {
    m: usize,
    n: usize,
    c: f64,
    /// low-order part of the shift, seen only by double-double arithmetic
    c_lo: f64,
    sigma: Complex64,
    tau: Complex64,
}

impl PencilSpec {
    /// The standard pencil with `D = diag(1,...,1,-1,...,-1)`.
    pub fn new(m: usize, n: usize, c: f64) -> Result<Self> {
        Self::with_diagonal(m, n, c, Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0))
    }

    pub fn with_diagonal(m: usize, n: usize, c: f64, sigma: Complex64, tau: Complex64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidPencil(format!(
                "m and n must be positive (m = {m}, n = {n})"
            )));
        }
        if !c.is_finite() {
            return Err(Error::InvalidPencil(format!("c must be finite, got {c}")));
        }
        let zero = Complex64::new(0.0, 0.0);
        if sigma == zero || tau == zero || !sigma.is_finite() || !tau.is_finite() {
            return Err(Error::InvalidPencil("sigma and tau must be finite and non-zero".into()));
        }
        Ok(PencilSpec {
            m,
            n,
            c,
            c_lo: 0.0,
            sigma,
            tau,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// The shift is the double-double `c + c_lo`; zero unless set by
    /// [`PencilSpec::with_shift_tail`].
    pub fn c_lo(&self) -> f64 {
        self.c_lo
    }

    /// The same pencil with shift `c + c_lo`, for shifts that binary64 cannot
    /// hold. Only double-double evaluation sees `c_lo`.
    pub fn with_shift_tail(&self, c_lo: f64) -> Result<Self> {
        if !c_lo.is_finite() || c_lo.abs() > 1e-12 * (1.0 + self.c.abs()) {
            return Err(Error::InvalidPencil(format!(
                "shift tail {c_lo} is not a low-order correction"
            )));
        }
        Ok(PencilSpec { c_lo, ..*self })
    }

    pub fn sigma(&self) -> Complex64 {
        self.sigma
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    /// `N = m + n`.
    pub fn size(&self) -> usize {
        self.m + self.n
    }

    pub fn has_default_diagonal(&self) -> bool {
        self.sigma == Complex64::new(1.0, 0.0) && self.tau == Complex64::new(-1.0, 0.0)
    }

    /// The same pencil with `c` replaced.
    pub fn with_shift(&self, c: f64) -> Result<Self> {
        Self::with_diagonal(self.m, self.n, c, self.sigma, self.tau)
    }

    #[inline]
    fn weight(&self, k: usize) -> Complex64 {
        if k <= self.m {
            self.sigma
        } else {
            self.tau
        }
    }
}

/// The `k`-th diagonal entry (1-based) of `H_{N;c} - lambda D`.
pub fn diag_entry(spec: &PencilSpec, k: usize, lambda: Complex64) -> Result<Complex64> {
    if k == 0 || k > spec.size() {
        return Err(Error::IndexOutOfRange {
            index: k,
            size: spec.size(),
        });
    }
    Ok(spec.c - lambda * spec.weight(k))
}

/// `p(lambda)`, `p'(lambda)` and the Newton ratio `p / p'`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CharPolyEval {
    pub lambda: Complex64,
    pub value: ScaledValue,
    pub derivative: ScaledValue,
    /// `p / p'`; zero when `p = 0`, infinite when only `p' = 0`.
    pub newton_ratio: Complex64,
    /// `log2 max_k |d_k|` over the recurrence, the magnitude against which
    /// cancellation in `p` is measured.
    pub log2_scale: f64,
}

impl CharPolyEval {
    /// `|p| / (max_k |d_k| + (1 + |lambda|) |p'|)`.
    ///
    /// The first term measures cancellation in the recurrence, the second the
    /// change of `p` under a relative perturbation of `lambda`; near a root
    /// where the `d_k` grow geometrically the second one dominates.
    pub fn relative_residual(&self) -> f64 {
        if self.value.is_zero() {
            return 0.0;
        }
        let slope = self.derivative.log2_abs() + (1.0 + self.lambda.norm()).log2();
        let (hi, lo) = if slope > self.log2_scale {
            (slope, self.log2_scale)
        } else {
            (self.log2_scale, slope)
        };
        let log2_den = hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2;
        (self.value.log2_abs() - log2_den).exp2()
    }

    /// `p' / p`, the reciprocal of the Newton ratio.
    pub fn log_derivative(&self) -> Complex64 {
        self.derivative.ratio(&self.value)
    }
}

/// Scalar arithmetic the recurrence can run in.
pub(crate) trait RecurrenceScalar: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {
    const ZERO: Self;
    const ONE: Self;
    fn from_c64(z: Complex64) -> Self;
    fn to_c64(self) -> Complex64;
    fn scale_pow2(self, k: i32) -> Self;
    fn l1(self) -> f64;
    /// `(c + c_lo) - lambda * weight`, as accurately as the arithmetic allows.
    fn affine(c: f64, c_lo: f64, lambda: Complex64, weight: Complex64) -> Self;
}

impl RecurrenceScalar for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
    const ONE: Self = Complex64::new(1.0, 0.0);

    #[inline]
    fn from_c64(z: Complex64) -> Self {
        z
    }

    #[inline]
    fn to_c64(self) -> Complex64 {
        self
    }

    #[inline]
    fn scale_pow2(self, k: i32) -> Self {
        self * pow2(k)
    }

    #[inline]
    fn l1(self) -> f64 {
        self.re.abs() + self.im.abs()
    }

    #[inline]
    fn affine(c: f64, _c_lo: f64, lambda: Complex64, weight: Complex64) -> Self {
        c - lambda * weight
    }
}

impl RecurrenceScalar for ComplexDD {
    const ZERO: Self = ComplexDD::ZERO;
    const ONE: Self = ComplexDD::ONE;

    #[inline]
    fn from_c64(z: Complex64) -> Self {
        ComplexDD::from_c64(z)
    }

    #[inline]
    fn to_c64(self) -> Complex64 {
        ComplexDD::to_c64(self)
    }

    #[inline]
    fn scale_pow2(self, k: i32) -> Self {
        ComplexDD::scale_pow2(self, k)
    }

    #[inline]
    fn l1(self) -> f64 {
        self.l1_hi()
    }

    #[inline]
    fn affine(c: f64, c_lo: f64, lambda: Complex64, weight: Complex64) -> Self {
        let shift = ComplexDD {
            re: DoubleDouble::from_f64(c) + DoubleDouble::from_f64(c_lo),
            im: DoubleDouble::ZERO,
        };
        shift - ComplexDD::from_c64(lambda) * ComplexDD::from_c64(weight)
    }
}

/// Runs `d_k = a_k d_{k-1} - d_{k-2}` and its derivative for `k = 1..=len`,
/// where `entry(k) = (a_k, a'_k)`.
pub(crate) fn run_recurrence<S, F>(len: usize, lambda: Complex64, entry: F) -> CharPolyEval
where
    S: RecurrenceScalar,
    F: Fn(usize) -> (S, S),
{
    let big = pow2(RESCALE_EXP);
    let small = pow2(-RESCALE_EXP);

    let mut d_prev = S::ONE;
    let mut dp_prev = S::ZERO;
    let (mut d, mut dp) = if len == 0 { (S::ONE, S::ZERO) } else { entry(1) };
    let mut exponent: i64 = 0;
    let mut peak = d.l1().max(1.0);

    for k in 2..=len {
        let (a, ap) = entry(k);
        let d_next = a * d - d_prev;
        let dp_next = ap * d + a * dp - dp_prev;
        d_prev = d;
        dp_prev = dp;
        d = d_next;
        dp = dp_next;

        let mag = d.l1();
        if mag > peak {
            peak = mag;
        }
        let top = mag.max(dp.l1());
        if top > big {
            d = d.scale_pow2(-RESCALE_EXP);
            dp = dp.scale_pow2(-RESCALE_EXP);
            d_prev = d_prev.scale_pow2(-RESCALE_EXP);
            dp_prev = dp_prev.scale_pow2(-RESCALE_EXP);
            peak *= small;
            exponent += RESCALE_EXP as i64;
        } else if top < small && d_prev.l1().max(dp_prev.l1()) < small && top > 0.0 {
            d = d.scale_pow2(RESCALE_EXP);
            dp = dp.scale_pow2(RESCALE_EXP);
            d_prev = d_prev.scale_pow2(RESCALE_EXP);
            dp_prev = dp_prev.scale_pow2(RESCALE_EXP);
            peak *= big;
            exponent -= RESCALE_EXP as i64;
        }
    }

    let value = ScaledValue::new(d.to_c64(), exponent);
    let derivative = ScaledValue::new(dp.to_c64(), exponent);
    CharPolyEval {
        lambda,
        value,
        derivative,
        newton_ratio: value.ratio(&derivative),
        log2_scale: peak.log2() + exponent as f64,
    }
}

/// `p(lambda) = det(H_{N;c} - lambda D)` and its derivative in binary64.
pub fn charpoly_eval(spec: &PencilSpec, lambda: Complex64) -> CharPolyEval {
    charpoly_eval_with(spec, lambda, Precision::Double)
}

/// [`charpoly_eval`] in the requested arithmetic.
pub fn charpoly_eval_with(spec: &PencilSpec, lambda: Complex64, precision: Precision) -> CharPolyEval {
    match precision {
        Precision::Double => eval_in::<Complex64>(spec, lambda),
        Precision::DoubleDouble => eval_in::<ComplexDD>(spec, lambda),
    }
}

fn eval_in<S: RecurrenceScalar>(spec: &PencilSpec, lambda: Complex64) -> CharPolyEval {
    let (c, c_lo, m) = (spec.c, spec.c_lo, spec.m);
    let upper = (S::affine(c, c_lo, lambda, spec.sigma), S::from_c64(-spec.sigma));
    let lower = (S::affine(c, c_lo, lambda, spec.tau), S::from_c64(-spec.tau));
    run_recurrence(spec.size(), lambda, |k| if k <= m { upper } else { lower })
}

/// Eigenvalues `c + 2 cos(pi j / (N + 1))`, `j = 1..=N`, of `H_{N;c}` in
/// descending order.
pub fn h_eigenvalues(size: usize, c: f64) -> Vec<f64> {
    let denom = (size + 1) as f64;
    (1..=size).map(|j| c + 2.0 * (PI * j as f64 / denom).cos()).collect()
}

/// `min_j |c - 2 cos(pi j / (N + 1))|`, the lower bound for the distance of
/// the pencil spectrum to the origin.
pub fn delta_nc(size: usize, c: f64) -> f64 {
    h_eigenvalues(size, 0.0)
        .into_iter()
        .map(|mu| (c - mu).abs())
        .fold(f64::INFINITY, f64::min)
}

/// For `c` within `1e-12` of a zero `2 cos(pi j / (N + 1))` of
/// `det H_{N;c}`, the low-order part `c_lo` with `c + c_lo` equal to that
/// zero to double-double accuracy (Newton on `det H_{N;c}` in double-double).
pub fn zero_shift_tail(size: usize, c: f64) -> Result<f64> {
    if delta_nc(size, c) > 1e-12 {
        return Err(Error::Domain(format!(
            "c = {c} is not a zero of det H_(N;c) for N = {size}"
        )));
    }
    let mut c_lo = 0.0;
    for _ in 0..3 {
        let shift = ComplexDD {
            re: DoubleDouble::from_f64(c) + DoubleDouble::from_f64(c_lo),
            im: DoubleDouble::ZERO,
        };
        let ratio = run_recurrence(size, Complex64::new(c, 0.0), |_| (shift, ComplexDD::ONE)).newton_ratio;
        if !ratio.re.is_finite() || ratio.re == 0.0 {
            break;
        }
        c_lo -= ratio.re;
    }
    Ok(c_lo)
}

/// `q_mm(lambda) = det(H_mm - lambda I)`.
pub fn h_charpoly_at(mm: usize, lambda: Complex64) -> ScaledValue {
    let entry = (-lambda, Complex64::new(-1.0, 0.0));
    run_recurrence(mm, lambda, |_| entry).value
}

/// Trace and determinant of `D^{-1} H_{N;c}`, which equal the sum and the
/// product of the pencil eigenvalues.
pub fn trace_and_det(spec: &PencilSpec) -> (Complex64, ScaledValue) {
    let trace = spec.c * (spec.m as f64 / spec.sigma + spec.n as f64 / spec.tau);
    let p0 = charpoly_eval(spec, Complex64::new(0.0, 0.0)).value;
    let det_d = ScaledValue::powu(spec.sigma, spec.m as u64) * ScaledValue::powu(spec.tau, spec.n as u64);
    (trace, p0 / det_d)
}
