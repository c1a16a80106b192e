//! Named numerical checks of the structural results about the pencil, each
//! reduced to one worst-case number compared against a tolerance.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analytic::{beta_normalized, f_ratio, gamma, imag_axis_root, lambda_to_zw, n1_root};
use crate::asymptotics::{c0_grid, crude_bound, lambda0, lambda_c};
use crate::error::{Error, Result};
use crate::parallel::map_slice;
use crate::pencil::{charpoly_eval_with, delta_nc, h_charpoly_at, zero_shift_tail, PencilSpec, Precision};
use crate::rootfinder::{compute_spectrum, hausdorff, SolverOptions, Spectrum};
use crate::scaled::ScaledValue;

/// Largest float below 1; `metric <= STRICTLY_BELOW_ONE` encodes `metric < 1`.
pub const STRICTLY_BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// Seed of the random `(z, w)` samples of the determinant identity.
pub const DET_IDENTITY_SEED: u64 = 0x5e_ed0f_2d37;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub metric: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckResult {
    /// `passed` is `metric <= tolerance`, so a NaN metric fails.
    pub fn new(name: impl Into<String>, metric: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: metric <= tolerance,
            metric,
            tolerance,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SuiteParams {
    pub m: usize,
    pub n: usize,
    pub c: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: SuiteParams,
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, params: SuiteParams, checks: Vec<CheckResult>) -> Self {
        let all_passed = checks.iter().all(|c| c.passed);
        VerificationReport {
            suite: suite.into(),
            params,
            checks,
            all_passed,
        }
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        // non-finite metrics become null
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(5);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {} (m = {}, n = {}, c = {})",
            self.suite, self.params.m, self.params.n, self.params.c
        );
        let _ = writeln!(
            out,
            "{:<width$}  {:<6}  {:>12}  {:>12}  detail",
            "check", "result", "metric", "tolerance"
        );
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{:<width$}  {:<6}  {:>12.5e}  {:>12.5e}  {}",
                c.name,
                if c.passed { "PASS" } else { "FAIL" },
                c.metric,
                c.tolerance,
                c.detail
            );
        }
        let _ = writeln!(out, "all passed: {}", self.all_passed);
        out
    }
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |acc, x| {
        if x.is_nan() || acc.is_nan() {
            f64::NAN
        } else {
            acc.max(x)
        }
    })
}

fn fmt_list(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:.4e}")).collect();
    format!("[{}]", parts.join(", "))
}

/// `|lambda| < 2 + |c|`, conjugation closure, and for `|c| >= 2` reality.
pub fn check_localisation(spectrum: &Spectrum, opts: &SolverOptions) -> Vec<CheckResult> {
    let c = spectrum.spec.c();
    let bound = 2.0 + c.abs();
    let max_abs = spectrum.max_modulus();
    let mut out = vec![CheckResult::new(
        "localisation_bound",
        max_abs - bound,
        0.0,
        format!("max |lambda| = {max_abs:.6}, bound 2 + |c| = {bound:.6}"),
    )];

    let values = spectrum.values();
    let closure = max_of(values.iter().filter(|z| z.im.abs() > opts.real_threshold).map(|z| {
        values
            .iter()
            .map(|w| (w - z.conj()).norm())
            .fold(f64::INFINITY, f64::min)
    }));
    out.push(CheckResult::new(
        "conjugation_closure",
        closure,
        opts.pairing_tolerance,
        "max distance from conj(lambda) to the spectrum",
    ));

    if c.abs() >= 2.0 {
        out.push(CheckResult::new(
            "localisation_real",
            spectrum.max_abs_imag(),
            1e-8,
            "max |Im lambda| for |c| >= 2",
        ));
    }
    out
}

/// For `m = n`: invariance under `lambda -> -lambda` and, when `c != 0`,
/// agreement with the spectrum at `-c`.
pub fn check_symmetries(spectrum: &Spectrum, opts: &SolverOptions) -> Result<Vec<CheckResult>> {
    let spec = spectrum.spec;
    if spec.m() != spec.n() {
        return Ok(Vec::new());
    }
    let values = spectrum.values();
    let negated: Vec<Complex64> = values.iter().map(|z| -z).collect();
    let mut out = vec![CheckResult::new(
        "negation_symmetry",
        hausdorff(&values, &negated),
        opts.pairing_tolerance,
        "Hausdorff distance between spec and -spec",
    )];
    if spec.c() != 0.0 {
        let mirror = compute_spectrum(&spec.with_shift(-spec.c())?, opts)?;
        out.push(CheckResult::new(
            "c_sign_symmetry",
            hausdorff(&values, &mirror.values()),
            opts.pairing_tolerance,
            format!(
                "Hausdorff distance between the spectra at c = {} and c = {}",
                spec.c(),
                -spec.c()
            ),
        ));
    }
    Ok(out)
}

/// Determinant by Gaussian elimination with partial pivoting.
fn dense_det(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .expect("non-empty range");
        if a[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        let (top, bottom) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in bottom {
            let factor = row[col] / pivot_row[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= factor * p;
            }
        }
    }
    det
}

/// `det(H_{m+n;0} - D)` with `D = diag(sigma x m, tau x n)`, built densely.
fn dense_unit_pencil_det(m: usize, n: usize, sigma: Complex64, tau: Complex64) -> Complex64 {
    let size = m + n;
    let one = Complex64::new(1.0, 0.0);
    let a = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    if i == j {
                        -(if i < m { sigma } else { tau })
                    } else if i.abs_diff(j) == 1 {
                        one
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect()
        })
        .collect();
    dense_det(a)
}

fn sample_away_from_units(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let z = Complex64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..2.0 * PI));
        if (z - 1.0).norm() > 0.1 && (z + 1.0).norm() > 0.1 {
            return z;
        }
    }
}

/// `det(H_{m+n;0} - D_{m,n;sigma,tau})` with `sigma = z + 1/z`, `tau = w + 1/w`
/// equals `(-1)^{m+n} gamma_{m,n}(z, w) / ((z - 1/z)(w - 1/w))`, over all
/// `m, n >= 0` with `1 <= m + n <= max_size` and `trials` random `(z, w)`.
pub fn check_det_identity(max_size: usize, trials: usize, seed: u64) -> Result<CheckResult> {
    if max_size == 0 || max_size > 8 {
        return Err(Error::Domain(format!("max_size must lie in 1..=8, got {max_size}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut shapes = 0;
    for size in 1..=max_size {
        for m in 0..=size {
            let n = size - m;
            shapes += 1;
            for _ in 0..trials {
                let z = sample_away_from_units(&mut rng);
                let w = sample_away_from_units(&mut rng);
                let sigma = z + z.inv();
                let tau = w + w.inv();
                let direct = dense_unit_pencil_det(m, n, sigma, tau);
                let sign = if size % 2 == 0 { 1.0 } else { -1.0 };
                let formula = sign * gamma(m, n, z, w)? / ((z - z.inv()) * (w - w.inv()));
                let err = (direct - formula).norm() / direct.norm().max(formula.norm()).max(1e-300);
                worst = worst.max(err);
            }
        }
    }
    Ok(CheckResult::new(
        "det_identity",
        worst,
        1e-10,
        format!("{shapes} shapes with m + n <= {max_size}, {trials} random (z, w) each, seed {seed:#x}"),
    ))
}

/// Margin around `+-2 +- c`, where the `(z, w)` description degenerates.
const EXCLUDED_MARGIN: f64 = 1e-3;

fn near_excluded(lambda: Complex64, c: f64) -> bool {
    [2.0 + c, 2.0 - c, -2.0 + c, -2.0 - c]
        .iter()
        .any(|&x| (lambda - x).norm() < EXCLUDED_MARGIN)
}

/// `beta_{m,n}(z, w) = 0` at every eigenvalue (normalized), and
/// `F_m(z) F_n(w) = -1` at every non-real one.
pub fn check_main1(spectrum: &Spectrum) -> Result<Vec<CheckResult>> {
    let spec = spectrum.spec;
    let (m, n, c) = (spec.m(), spec.n(), spec.c());
    let mut beta_worst = 0.0f64;
    let mut f_worst = 0.0f64;
    let mut counted = (0, 0);
    for e in &spectrum.eigenvalues {
        if near_excluded(e.value, c) {
            continue;
        }
        let zw = lambda_to_zw(e.value, c);
        beta_worst = beta_worst.max(beta_normalized(m, n, zw.z, zw.w)?.norm());
        counted.0 += 1;
        if !e.is_real {
            let product = match (f_ratio(m, zw.z), f_ratio(n, zw.w)) {
                (Ok(a), Ok(b)) => a * b,
                _ => Complex64::new(f64::NAN, 0.0),
            };
            f_worst = f_worst.max((product + 1.0).norm());
            if product.is_nan() {
                f_worst = f64::NAN;
            }
            counted.1 += 1;
        }
    }
    Ok(vec![
        CheckResult::new(
            "thm_main1a_beta",
            beta_worst,
            1e-6,
            format!("max normalized |beta| over {} eigenvalues", counted.0),
        ),
        CheckResult::new(
            "thm_main1c_residual",
            f_worst,
            1e-6,
            format!("max |F_m(z) F_n(w) + 1| over {} non-real eigenvalues", counted.1),
        ),
    ])
}

/// Eigenvalues on the imaginary axis, up to this distance.
const AXIS_TOL: f64 = 1e-8;

/// `max |2m |Im lambda| - Lambda_0(|Re lambda|)|` over off-axis eigenvalues
/// of an `m = n`, `c = 0` spectrum, optionally only over `|Re lambda| > floor`.
pub fn lambda0_deviation(spectrum: &Spectrum, floor: f64) -> f64 {
    let m = spectrum.spec.m() as f64;
    max_of(spectrum.eigenvalues.iter().filter_map(|e| {
        let u = e.value.re.abs();
        (u > AXIS_TOL.max(floor)).then(|| match lambda0(u) {
            Ok(l) => (2.0 * m * e.value.im.abs() - l).abs(),
            Err(_) => f64::INFINITY,
        })
    }))
}

/// `max_lambda min_k ||Re lambda| - 2 cos(2 pi k / (2m + 1))|` over off-axis
/// eigenvalues.
pub fn grid_deviation(spectrum: &Spectrum) -> Result<f64> {
    let grid = c0_grid(spectrum.spec.m())?;
    Ok(max_of(spectrum.eigenvalues.iter().filter_map(|e| {
        let u = e.value.re.abs();
        (u > AXIS_TOL).then(|| grid.iter().map(|g| (u - g).abs()).fold(f64::INFINITY, f64::min))
    })))
}

/// The imaginary-axis eigenvalues of an `m = n`, `c = 0` spectrum: exactly
/// `+-i (y - 1/y)` with `y` the root of `f_m` when `m` is odd, none when `m`
/// is even.
pub fn check_imaginary_pair(spectrum: &Spectrum) -> Result<CheckResult> {
    let m = spectrum.spec.m();
    let on_axis: Vec<Complex64> = spectrum
        .values()
        .into_iter()
        .filter(|z| z.re.abs() <= AXIS_TOL)
        .collect();
    if m % 2 == 0 {
        return Ok(CheckResult::new(
            "thm_c0_imaginary_pair",
            on_axis.len() as f64,
            0.0,
            format!("m = {m} even: {} eigenvalues on the imaginary axis", on_axis.len()),
        ));
    }
    let y = imag_axis_root(m)?;
    let h = y - 1.0 / y;
    let bound_ok = m < 55 || y < ((m as f64).ln() / (2 * m) as f64).exp();
    let metric = if on_axis.len() != 2 || !bound_ok {
        f64::INFINITY
    } else {
        let mut ims: Vec<f64> = on_axis.iter().map(|z| z.im).collect();
        ims.sort_by(f64::total_cmp);
        (ims[0] + h)
            .abs()
            .max((ims[1] - h).abs())
            .max(on_axis.iter().map(|z| z.re.abs()).fold(0.0, f64::max))
    };
    Ok(CheckResult::new(
        "thm_c0_imaginary_pair",
        metric,
        1e-8,
        format!(
            "m = {m}: {} eigenvalues on the axis, expected +-{h:.12}i (y = {y:.15}, y < exp(log m / 2m): {bound_ok}), m Im / log m = {:.6}",
            on_axis.len(),
            m as f64 * h / (m as f64).ln()
        ),
    ))
}

/// The `c = 0`, `m = n` asymptotics along a ladder of increasing `m`:
/// no real eigenvalues, the `Lambda_0` deviation and the grid deviation both
/// strictly decreasing, and the imaginary-axis eigenvalues at every rung.
pub fn check_c0_theorem(ladder: &[usize], opts: &SolverOptions) -> Result<Vec<CheckResult>> {
    if ladder.len() < 2 || ladder.windows(2).any(|w| w[0] >= w[1]) || ladder[0] < 2 {
        return Err(Error::Domain(
            "the ladder needs at least two increasing sizes >= 2".into(),
        ));
    }
    let spectra = ladder
        .iter()
        .map(|&m| compute_spectrum(&PencilSpec::new(m, m, 0.0)?, opts))
        .collect::<Result<Vec<_>>>()?;

    let real_count: usize = spectra.iter().map(|s| s.real().count()).sum();
    let min_im = spectra
        .iter()
        .flat_map(|s| s.eigenvalues.iter().map(|e| e.value.im.abs()))
        .fold(f64::INFINITY, f64::min);

    let lam_err: Vec<f64> = spectra.iter().map(|s| lambda0_deviation(s, 0.0)).collect();
    let lam_window: Vec<f64> = spectra.iter().map(|s| lambda0_deviation(s, 0.1)).collect();
    let grid_err = spectra.iter().map(grid_deviation).collect::<Result<Vec<_>>>()?;
    let worst_ratio = |xs: &[f64]| max_of(xs.windows(2).map(|w| w[1] / w[0]));

    let mut pair_metric = 0.0f64;
    let mut pair_detail = Vec::new();
    for s in &spectra {
        // even rungs report a count against 0, odd rungs an error against 1e-8
        let r = check_imaginary_pair(s)?;
        pair_metric = if r.passed {
            pair_metric.max(r.metric)
        } else {
            f64::INFINITY
        };
        pair_detail.push(r.detail);
    }

    Ok(vec![
        CheckResult::new(
            "thm_c0_no_real",
            real_count as f64,
            0.0,
            format!("ladder {ladder:?}: {real_count} real eigenvalues, min |Im| = {min_im:.3e}"),
        ),
        CheckResult::new(
            "thm_c0_lambda0_decrease",
            worst_ratio(&lam_err),
            STRICTLY_BELOW_ONE,
            format!(
                "max |2m Im - Lambda_0(|Re|)| along {ladder:?}: {}; restricted to |Re| > 0.1: {}",
                fmt_list(&lam_err),
                fmt_list(&lam_window)
            ),
        ),
        CheckResult::new(
            "thm_c0_grid_decrease",
            worst_ratio(&grid_err),
            STRICTLY_BELOW_ONE,
            format!(
                "max distance of |Re| to the grid along {ladder:?}: {}",
                fmt_list(&grid_err)
            ),
        ),
        CheckResult::new("thm_c0_imaginary_pair", pair_metric, 1e-8, pair_detail.join("; ")),
    ])
}

/// `max |Im lambda| <= 1.5 max(log m / m, log n / n)`.
pub fn check_crude_bound(spectrum: &Spectrum) -> Result<CheckResult> {
    let spec = spectrum.spec;
    let bound = crude_bound(spec.m(), spec.n())?;
    let max_im = spectrum.max_abs_imag();
    Ok(CheckResult::new(
        "thm_crude_bound",
        max_im / bound,
        1.5,
        format!("max |Im| = {max_im:.6e}, max(log m/m, log n/n) = {bound:.6e}"),
    ))
}

/// For `m = n`, `0 < |c| < 2`: `2m |Im lambda| <= 1.05 Lambda_c(|Re lambda|)`
/// at non-real eigenvalues with `0.05 < |Re lambda| < 2 - |c| - 0.05`. The
/// largest `|Re lambda| - (2 - |c|)` over non-real eigenvalues is reported in
/// the detail and not asserted.
pub fn check_cne0_theorem(spectrum: &Spectrum) -> Result<CheckResult> {
    let spec = spectrum.spec;
    let c = spec.c().abs();
    if spec.m() != spec.n() || !(c > 0.0 && c < 2.0) {
        return Err(Error::Domain("needs m = n and 0 < |c| < 2".into()));
    }
    let m = spec.m() as f64;
    let (lo, hi) = (0.05, 2.0 - c - 0.05);
    let mut worst = 0.0f64;
    let mut counted = 0;
    for e in spectrum.nonreal() {
        let u = e.value.re.abs();
        if u > lo && u < hi {
            let bound = lambda_c(c, u)?;
            worst = worst.max(2.0 * m * e.value.im.abs() / bound);
            counted += 1;
        }
    }
    let outside = spectrum
        .nonreal()
        .map(|e| e.value.re.abs() - (2.0 - c))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(CheckResult::new(
        "thm_cne0_bound",
        worst,
        1.05,
        format!(
            "max 2m|Im| / Lambda_c(|Re|) over {counted} eigenvalues with {lo} < |Re| < {hi:.4}; max |Re| - (2 - |c|) over non-real eigenvalues = {outside:.3e}"
        ),
    ))
}

/// `n = m + 1`, `c = 0`: the spectrum is real, consists of the roots
/// `2 cos(pi r / (m + 1))` of `q_m` (each twice) and `0`, and
/// `p(lambda) = (-1)^m lambda q_m(lambda)^2` for `D = diag(1 x m, -1 x (m + 1))`.
pub fn check_nm1_theorem(mm: usize, opts: &SolverOptions) -> Result<Vec<CheckResult>> {
    let spec = PencilSpec::new(mm, mm + 1, 0.0)?;
    let spectrum = compute_spectrum(&spec, opts)?;

    let mut expected: Vec<(f64, usize)> = (1..=mm)
        .map(|r| (2.0 * (PI * r as f64 / (mm + 1) as f64).cos(), 2))
        .collect();
    if let Some(zero) = expected.iter_mut().find(|(x, _)| x.abs() < 1e-12) {
        *zero = (0.0, 3);
    } else {
        expected.push((0.0, 1));
    }
    expected.sort_by(|a, b| a.0.total_cmp(&b.0));

    let got: Vec<(f64, usize)> = spectrum
        .eigenvalues
        .iter()
        .map(|e| (e.value.re, e.algebraic_multiplicity))
        .collect();
    let all_real = spectrum.eigenvalues.iter().all(|e| e.is_real);
    let metric = if !all_real || got.len() != expected.len() || got.iter().zip(&expected).any(|(g, e)| g.1 != e.1) {
        f64::INFINITY
    } else {
        max_of(got.iter().zip(&expected).map(|(g, e)| (g.0 - e.0).abs()))
    };
    let zero_mult = got.iter().find(|(x, _)| x.abs() < 1e-8).map(|g| g.1).unwrap_or(0);
    let shown: Vec<String> = got.iter().take(8).map(|(x, k)| format!("{x:.12}(x{k})")).collect();

    let probes = [
        Complex64::new(0.37, 0.0),
        Complex64::new(-1.3, 0.2),
        Complex64::new(0.1, -0.9),
        Complex64::new(2.5, 1.0),
    ];
    let sign = if mm % 2 == 0 { 1.0 } else { -1.0 };
    let factor_err = max_of(probes.iter().map(|&lambda| {
        let p = charpoly_eval_with(&spec, lambda, Precision::DoubleDouble).value;
        let q = h_charpoly_at(mm, lambda);
        let rhs = ScaledValue::from_complex(lambda * sign) * q * q;
        (p.ratio(&rhs) - 1.0).norm()
    }));

    Ok(vec![
        CheckResult::new(
            "thm_nm1_spectrum",
            metric,
            1e-10,
            format!(
                "m = {mm}: {} distinct eigenvalues, total multiplicity {}, all real: {all_real}, multiplicity of 0: {zero_mult}; {}{}",
                got.len(),
                spectrum.total_multiplicity(),
                shown.join(", "),
                if got.len() > 8 { ", ..." } else { "" }
            ),
        ),
        CheckResult::new(
            "thm_nm1_factorization",
            factor_err,
            1e-12,
            "max relative gap between p and (-1)^m lambda q_m^2 at four probe points",
        ),
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZeroDistanceRow {
    /// `c` for a sweep over `c`, `m` for a sweep over sizes
    pub parameter: f64,
    pub d: f64,
    pub delta: f64,
}

/// `dist(spec, 0)` and its lower bound `delta_{N;|c|}` for one pencil.
///
/// A shift within [`SPECIAL_DELTA`] of some `2 cos(pi j / (N + 1))` is taken
/// to be that value, carried in double-double: `0` is then a double
/// eigenvalue, and the rounding of `c` to binary64 alone would move it by
/// about `sqrt(1e-16)`.
pub fn zero_distance_row(spec: &PencilSpec, parameter: f64, opts: &SolverOptions) -> Result<ZeroDistanceRow> {
    let delta = delta_nc(spec.size(), spec.c().abs());
    let spec = if delta <= SPECIAL_DELTA && spec.c_lo() == 0.0 {
        spec.with_shift_tail(zero_shift_tail(spec.size(), spec.c())?)?
    } else {
        *spec
    };
    let spectrum = compute_spectrum(&spec, opts)?;
    let d = spectrum.values().iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    Ok(ZeroDistanceRow { parameter, d, delta })
}

/// `delta` below this marks `c = 2 cos(pi j / (N + 1))`.
pub const SPECIAL_DELTA: f64 = 1e-12;

/// Over a grid of `c`: `d >= delta - 1e-10` everywhere, and `d` vanishes
/// (to `1e-8`) exactly at the grid points where `delta` does.
pub fn check_zero_distance(
    mm: usize,
    nn: usize,
    c_grid: &[f64],
    opts: &SolverOptions,
) -> Result<(Vec<CheckResult>, Vec<ZeroDistanceRow>)> {
    if c_grid.iter().any(|&c| !(0.0..=2.05).contains(&c)) {
        return Err(Error::Domain("c grid must lie in [0, 2.05]".into()));
    }
    let specs = c_grid
        .iter()
        .map(|&c| PencilSpec::new(mm, nn, c))
        .collect::<Result<Vec<_>>>()?;
    let inner = SolverOptions {
        parallel: false,
        ..*opts
    };
    let rows = map_slice(&specs, opts.parallel, |s| zero_distance_row(s, s.c(), &inner))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let gap = max_of(rows.iter().map(|r| r.delta - r.d));
    let special: Vec<&ZeroDistanceRow> = rows.iter().filter(|r| r.delta <= SPECIAL_DELTA).collect();
    let spurious = rows.iter().filter(|r| r.delta > SPECIAL_DELTA && r.d <= 1e-8).count();
    let special_d = max_of(special.iter().map(|r| r.d));
    let zero_metric = if spurious > 0 { f64::INFINITY } else { special_d };
    Ok((
        vec![
            CheckResult::new(
                "zero_distance_bound",
                gap,
                1e-10,
                format!("max (delta - d) over {} values of c, (m, n) = ({mm}, {nn})", rows.len()),
            ),
            CheckResult::new(
                "zero_distance_special",
                zero_metric,
                1e-8,
                format!(
                    "{} grid values with c = 2cos(pi j/(N+1)) (shift carried in double-double), max d there = {special_d:.3e}; {spurious} other values with d <= 1e-8",
                    special.len()
                ),
            ),
        ],
        rows,
    ))
}

/// The default `c` grid of the zero-distance check: `points` uniform values on
/// `[0, 2.05]` together with every `2 cos(pi j / (N + 1))` in that range.
pub fn zero_distance_grid(size: usize, points: usize) -> Vec<f64> {
    let mut grid: Vec<f64> = (0..points)
        .map(|k| 2.05 * k as f64 / (points.max(2) - 1) as f64)
        .collect();
    grid.extend(
        (1..=size)
            .map(|j| 2.0 * (PI * j as f64 / (size + 1) as f64).cos())
            .filter(|&c| (0.0..=2.05).contains(&c)),
    );
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// `n = 1`, `c = 0`, `m > 3`: the pencil has the eigenvalue `i (y - 1/y)`
/// with `y` the root of `g_m` in `(5/4, 3/2)`, and its imaginary part exceeds
/// `9/20`. For `m >= 200` also `|Im lambda - 1/sqrt 2| < 0.02`.
pub fn check_n1_lemma(mm: usize, opts: &SolverOptions) -> Result<Vec<CheckResult>> {
    let y = n1_root(mm)?;
    let target = Complex64::new(0.0, y - 1.0 / y);
    let spectrum = compute_spectrum(&PencilSpec::new(mm, 1, 0.0)?, opts)?;
    let nearest = spectrum
        .eigenvalues
        .iter()
        .map(|e| e.value)
        .min_by(|a, b| (a - target).norm().total_cmp(&(b - target).norm()))
        .expect("non-empty spectrum");
    let mut out = vec![
        CheckResult::new(
            "lemma_n1_root",
            (nearest - target).norm(),
            1e-8,
            format!(
                "m = {mm}: y = {y:.15}, predicted i(y - 1/y) = {:.15}i, nearest eigenvalue {nearest:.15}",
                target.im
            ),
        ),
        CheckResult::new(
            "lemma_n1_height",
            0.45 - nearest.im,
            0.0,
            format!("9/20 - Im lambda, Im lambda = {:.12}", nearest.im),
        ),
    ];
    if mm >= 200 {
        out.push(CheckResult::new(
            "lemma_n1_limit",
            (nearest.im - FRAC_1_SQRT_2).abs(),
            0.02,
            "|Im lambda - 1/sqrt 2|",
        ));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Localisation,
    Symmetry,
    DetIdentity,
    Main1,
    C0,
    CrudeBound,
    Cne0,
    Nm1,
    ZeroDistance,
    N1,
}

impl Suite {
    pub const NAMES: [&'static str; 11] = [
        "all",
        "localisation",
        "symmetry",
        "det-identity",
        "main1",
        "c0",
        "crude-bound",
        "cne0",
        "nm1",
        "zero-distance",
        "n1",
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Localisation => "localisation",
            Suite::Symmetry => "symmetry",
            Suite::DetIdentity => "det-identity",
            Suite::Main1 => "main1",
            Suite::C0 => "c0",
            Suite::CrudeBound => "crude-bound",
            Suite::Cne0 => "cne0",
            Suite::Nm1 => "nm1",
            Suite::ZeroDistance => "zero-distance",
            Suite::N1 => "n1",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "localisation" | "localization" => Suite::Localisation,
            "symmetry" => Suite::Symmetry,
            "det-identity" => Suite::DetIdentity,
            "main1" => Suite::Main1,
            "c0" => Suite::C0,
            "crude-bound" => Suite::CrudeBound,
            "cne0" => Suite::Cne0,
            "nm1" => Suite::Nm1,
            "zero-distance" => Suite::ZeroDistance,
            "n1" => Suite::N1,
            other => {
                return Err(Error::Domain(format!(
                    "unknown suite '{other}', expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

/// Sizes of the `c = 0` ladder started at `m`: `m`, `5m/2`, `5m`.
pub fn c0_ladder(mm: usize) -> Vec<usize> {
    vec![mm, mm * 5 / 2, mm * 5]
}

/// Uniform points of the default zero-distance grid.
pub const ZERO_DISTANCE_POINTS: usize = 400;

/// Runs `suite` for the pencil `(m, n, c)`.
///
/// `all` runs every check that applies to the parameters: the spectrum
/// checks on `(m, n, c)`, the determinant identity, the `c = 0` ladder when
/// `m = n` and `c = 0`, the `Lambda_c` bound when `m = n` and `0 < |c| < 2`,
/// and the `n = m + 1`, zero-distance and `n = 1` checks at size `m`.
pub fn run_suite(suite: Suite, params: SuiteParams, opts: &SolverOptions) -> Result<VerificationReport> {
    let SuiteParams { m, n, c } = params;
    let spectrum = || compute_spectrum(&PencilSpec::new(m, n, c)?, opts);
    let mut checks = Vec::new();
    let every = suite == Suite::All;

    let needs_spectrum = every
        || matches!(
            suite,
            Suite::Localisation | Suite::Symmetry | Suite::Main1 | Suite::CrudeBound | Suite::Cne0
        );
    let base = if needs_spectrum { Some(spectrum()?) } else { None };
    let base = base.as_ref();

    if every || suite == Suite::Localisation {
        checks.extend(check_localisation(base.expect("computed"), opts));
    }
    if every || suite == Suite::Symmetry {
        checks.extend(check_symmetries(base.expect("computed"), opts)?);
    }
    if every || suite == Suite::Main1 {
        checks.extend(check_main1(base.expect("computed"))?);
    }
    if every || suite == Suite::CrudeBound {
        if m >= 2 && n >= 2 {
            checks.push(check_crude_bound(base.expect("computed"))?);
        } else if !every {
            return Err(Error::Domain("crude bound needs m, n >= 2".into()));
        }
    }
    if every || suite == Suite::DetIdentity {
        checks.push(check_det_identity(8, 20, DET_IDENTITY_SEED)?);
    }
    if every || suite == Suite::C0 {
        if m == n && c == 0.0 && m >= 2 {
            checks.extend(check_c0_theorem(&c0_ladder(m), opts)?);
        } else if !every {
            return Err(Error::Domain("c0 suite needs m = n >= 2 and c = 0".into()));
        }
    }
    if every || suite == Suite::Cne0 {
        if m == n && c != 0.0 && c.abs() < 2.0 {
            checks.push(check_cne0_theorem(base.expect("computed"))?);
        } else if !every {
            return Err(Error::Domain("cne0 suite needs m = n and 0 < |c| < 2".into()));
        }
    }
    if every || suite == Suite::Nm1 {
        checks.extend(check_nm1_theorem(m, opts)?);
    }
    if every || suite == Suite::ZeroDistance {
        let grid = zero_distance_grid(m + n, ZERO_DISTANCE_POINTS);
        checks.extend(check_zero_distance(m, n, &grid, opts)?.0);
    }
    if every || suite == Suite::N1 {
        if m > 3 {
            checks.extend(check_n1_lemma(m, opts)?);
        } else if !every {
            return Err(Error::Domain("n1 suite needs m > 3".into()));
        }
    }
    Ok(VerificationReport::new(suite.name(), params, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_result_logic() {
        assert!(CheckResult::new("a", 1.0, 1.0, "").passed);
        assert!(!CheckResult::new("a", 1.0 + 1e-15, 1.0, "").passed);
        assert!(!CheckResult::new("a", f64::NAN, 1.0, "").passed);
        assert!(!CheckResult::new("a", 1.0, STRICTLY_BELOW_ONE, "").passed);
        assert!(CheckResult::new("a", 0.999, STRICTLY_BELOW_ONE, "").passed);
    }

    #[test]
    fn report_aggregates() {
        let p = SuiteParams { m: 1, n: 1, c: 0.0 };
        let ok = VerificationReport::new("x", p, vec![CheckResult::new("a", 0.0, 1.0, "")]);
        assert!(ok.all_passed);
        let bad = VerificationReport::new(
            "x",
            p,
            vec![CheckResult::new("a", 0.0, 1.0, ""), CheckResult::new("b", 2.0, 1.0, "")],
        );
        assert!(!bad.all_passed);
        assert_eq!(bad.failed().count(), 1);
        assert!(bad.to_table().contains("FAIL"));
        let json: serde_json::Value = serde_json::from_str(&bad.to_json()).unwrap();
        assert_eq!(json["checks"][1]["name"], "b");
    }

    #[test]
    fn dense_det_small() {
        let one = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        // [[0,1],[1,0]] has determinant -1
        assert_eq!(dense_det(vec![vec![z, one], vec![one, z]]), -one);
        // 1x1 pencil: det(0 - sigma) = -sigma
        let sigma = Complex64::new(2.5, 0.0);
        assert_eq!(dense_unit_pencil_det(1, 0, sigma, one), -sigma);
    }

    #[test]
    fn det_identity_holds() {
        let r = check_det_identity(6, 5, 1).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(check_det_identity(9, 1, 1).is_err());
    }

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().name(), name);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn nm1_example() {
        let r = check_nm1_theorem(3, &SolverOptions::default()).unwrap();
        assert!(r.iter().all(|c| c.passed), "{r:?}");
        assert!(r[0].detail.contains("multiplicity of 0: 3"));
        let r = check_nm1_theorem(4, &SolverOptions::default()).unwrap();
        assert!(r[0].passed && r[0].detail.contains("multiplicity of 0: 1"), "{r:?}");
    }

    #[test]
    fn main1_on_two_by_two() {
        let s = compute_spectrum(&PencilSpec::new(1, 1, 0.0).unwrap(), &SolverOptions::default()).unwrap();
        let r = check_main1(&s).unwrap();
        assert!(r.iter().all(|c| c.passed && c.metric < 1e-14), "{r:?}");
    }

    #[test]
    fn localisation_small() {
        let opts = SolverOptions::default();
        let s = compute_spectrum(&PencilSpec::new(3, 4, 0.0).unwrap(), &opts).unwrap();
        let r = check_localisation(&s, &opts);
        assert_eq!(r.len(), 2);
        assert!((r[0].metric - (2f64.sqrt() - 2.0)).abs() < 1e-10);
        let s = compute_spectrum(&PencilSpec::new(10, 10, 2.0).unwrap(), &opts).unwrap();
        let r = check_localisation(&s, &opts);
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|c| c.passed), "{r:?}");
    }

    #[test]
    fn grid_contains_special_values() {
        let g = zero_distance_grid(70, 400);
        let specials = g.iter().filter(|&&c| delta_nc(70, c) <= SPECIAL_DELTA).count();
        assert_eq!(specials, 35);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn n1_small() {
        let r = check_n1_lemma(10, &SolverOptions::default()).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|c| c.passed), "{r:?}");
    }
}
