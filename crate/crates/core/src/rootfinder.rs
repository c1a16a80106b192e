//! All `N` eigenvalues of the pencil as the roots of `p(lambda)`.
//!
//! The roots are found together by Aberth-Ehrlich sweeps that only need the
//! Newton ratio `p / p'` from the recurrence, so the polynomial coefficients
//! (which overflow for large `N`) are never formed. Sweeps run in binary64
//! first and are finished in double-double, which is what resolves the
//! members of a multiple root.
//! Clusters of roots scattered around a multiple root are then merged into
//! one eigenvalue with a multiplicity.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::imag_axis_root;
use crate::asymptotics::lambda0;
use crate::error::{Error, Result};
use crate::parallel::map_indices;
use crate::pencil::{charpoly_eval_with, trace_and_det, PencilSpec, Precision};
use crate::scaled::ScaledValue;

/// Which arithmetic the sweeps use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum PrecisionMode {
    /// binary64 sweeps followed by double-double ones; double-double only
    /// when `N > 2000`
    #[default]
    Auto,
    Double,
    DoubleDouble,
}

/// Size above which [`PrecisionMode::Auto`] runs every sweep in double-double.
pub const AUTO_DOUBLE_DOUBLE_SIZE: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SolverOptions {
    /// stop correcting a root once `|step| <= tol (1 + |lambda|)`
    pub tol: f64,
    /// largest `|p| / max_k |d_k|` accepted for a root that stopped improving
    pub residual_tolerance: f64,
    /// `|Im lambda|` at or below this is classified real
    pub real_threshold: f64,
    /// roots closer than `cluster_radius (1 + |lambda|)` may merge
    pub cluster_radius: f64,
    /// tolerance for the conjugation and reflection pairings
    pub pairing_tolerance: f64,
    /// sweep budget per precision phase
    pub max_iter: usize,
    /// samples of the real-axis sign scan
    pub grid_points: usize,
    pub precision: PrecisionMode,
    /// evaluate the `N` Newton ratios of a sweep on the rayon pool
    pub parallel: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-13,
            residual_tolerance: 1e-9,
            real_threshold: 1e-10,
            cluster_radius: 1e-7,
            pairing_tolerance: 1e-8,
            max_iter: 200,
            grid_points: 20001,
            precision: PrecisionMode::Auto,
            parallel: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Eigenvalue {
    pub value: Complex64,
    /// `|p(lambda)| / max_k |d_k|`, evaluated in double-double
    pub residual: f64,
    pub algebraic_multiplicity: usize,
    pub is_real: bool,
    pub newton_steps: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub spec: PencilSpec,
    pub eigenvalues: Vec<Eigenvalue>,
    /// Aberth sweeps over both precision phases
    pub iterations: usize,
    pub converged: bool,
}

impl Spectrum {
    /// Every eigenvalue repeated according to its multiplicity.
    pub fn values(&self) -> Vec<Complex64> {
        self.eigenvalues
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value, e.algebraic_multiplicity))
            .collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.algebraic_multiplicity).sum()
    }

    pub fn sum(&self) -> Complex64 {
        self.eigenvalues
            .iter()
            .map(|e| e.value * e.algebraic_multiplicity as f64)
            .sum()
    }

    pub fn product(&self) -> ScaledValue {
        self.eigenvalues
            .iter()
            .map(|e| ScaledValue::powu(e.value, e.algebraic_multiplicity as u64))
            .product()
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.eigenvalues.iter().map(|e| e.value.im.abs()).fold(0.0, f64::max)
    }

    pub fn max_modulus(&self) -> f64 {
        self.eigenvalues.iter().map(|e| e.value.norm()).fold(0.0, f64::max)
    }

    pub fn max_residual(&self) -> f64 {
        self.eigenvalues.iter().map(|e| e.residual).fold(0.0, f64::max)
    }

    pub fn real(&self) -> impl Iterator<Item = &Eigenvalue> {
        self.eigenvalues.iter().filter(|e| e.is_real)
    }

    pub fn nonreal(&self) -> impl Iterator<Item = &Eigenvalue> {
        self.eigenvalues.iter().filter(|e| !e.is_real)
    }

    /// Relative errors of the trace and determinant identities,
    /// `sum lambda = c (m - n)` and `prod lambda = (-1)^n p(0)`.
    pub fn newton_identity_errors(&self) -> (f64, f64) {
        let (trace, det) = trace_and_det(&self.spec);
        let scale = self.values().iter().map(|z| z.norm()).sum::<f64>().max(1.0);
        let sum_err = (self.sum() - trace).norm() / scale;
        let prod = self.product();
        let prod_err = if det.is_zero() && prod.is_zero() {
            0.0
        } else if det.is_zero() || prod.is_zero() {
            // one side vanished: compare the other against the unit scale
            prod.abs().max(det.abs())
        } else {
            (prod.ratio(&det) - 1.0).norm()
        };
        (sum_err, prod_err)
    }
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    let directed = |from: &[Complex64], to: &[Complex64]| {
        from.iter()
            .map(|x| to.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    directed(a, b).max(directed(b, a))
}

/// Imaginary semi-axis of the ellipse carrying the generic starting points.
const ELLIPSE_HEIGHT: f64 = 0.5;

/// `N` starting points.
///
/// For `m = n` and `c = 0` these are the large-`m` predictions
/// `+-u_k +- i Lambda_0(u_k) / (2m)` with `u_k = 2 cos(2 pi k / (2m + 1))`,
/// plus the imaginary pair for odd `m`. Otherwise the simple real roots found
/// by [`real_axis_scan`] are used as they are, and the remaining points are
/// spread over the ellipse with real semi-axis `0.9 (2 + |c|)` and imaginary
/// semi-axis [`ELLIPSE_HEIGHT`], rotated by `0.5 / K` radians (`K` points) so
/// that none lies on an axis.
pub fn initial_guesses(spec: &PencilSpec, opts: &SolverOptions) -> Vec<Complex64> {
    let size = spec.size();
    let (m, c) = (spec.m(), spec.c());
    if m == spec.n() && c == 0.0 {
        let mut out = Vec::with_capacity(size);
        let denom = (2 * m + 1) as f64;
        for k in 1..=m / 2 {
            let u = 2.0 * (2.0 * PI * k as f64 / denom).cos();
            let v = lambda0(u).expect("grid point inside (0, 2)") / (2 * m) as f64;
            for (su, sv) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                out.push(Complex64::new(su * u, sv * v));
            }
        }
        if m % 2 == 1 {
            let y = imag_axis_root(m).expect("odd m");
            let h = y - 1.0 / y;
            out.push(Complex64::new(0.0, h));
            out.push(Complex64::new(0.0, -h));
        }
        debug_assert_eq!(out.len(), size);
        return out;
    }
    let mut out: Vec<Complex64> = real_axis_scan(spec, opts)
        .into_iter()
        .map(|x| Complex64::new(x, 0.0))
        .collect();
    out.truncate(size);
    let rest = size - out.len();
    let semi = 0.9 * (2.0 + c.abs());
    let offset = 0.5 / rest.max(1) as f64;
    out.extend((0..rest).map(|k| {
        let t = 2.0 * PI * k as f64 / rest as f64 + offset;
        Complex64::new(semi * t.cos(), ELLIPSE_HEIGHT * t.sin())
    }));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RootState {
    Active,
    /// last step below the correction tolerance
    Converged,
    /// steps stopped shrinking; sits at the rounding floor
    Stalled,
}

/// Sweeps without a new smallest step before a root counts as stalled.
const STALL_PATIENCE: u32 = 5;

/// Steps larger than this (relative) are still far from any root and never
/// count towards a stall.
const STALL_ZONE: f64 = 1e-3;

/// A root only stalls where `p` is down to rounding noise. Approximations
/// that creep slowly towards a cluster have residuals far above this.
const STALL_RESIDUAL: f64 = 1e-10;

fn aberth_step(ratio: Complex64, sum: Complex64) -> Option<Complex64> {
    if ratio.re == 0.0 && ratio.im == 0.0 {
        return Some(ratio);
    }
    if !ratio.is_finite() {
        // p' = 0: the limit of r / (1 - r s) is -1/s
        let step = -sum.inv();
        return step.is_finite().then_some(step);
    }
    let step = ratio / (1.0 - ratio * sum);
    if step.is_finite() {
        Some(step)
    } else {
        Some(ratio)
    }
}

struct Phase<'a> {
    spec: &'a PencilSpec,
    opts: &'a SolverOptions,
    precision: Precision,
}

impl Phase<'_> {
    /// Double-double phases run until the step is below one ulp of the
    /// binary64 root, so that the members of a multiple root end up evenly
    /// spread around it and their centroid is accurate.
    fn tol(&self) -> f64 {
        match self.precision {
            Precision::Double => self.opts.tol,
            Precision::DoubleDouble => self.opts.tol.min(f64::EPSILON / 2.0),
        }
    }

    /// Jacobi-style Aberth sweeps over the active roots. Returns the number
    /// of sweeps.
    fn run(&self, roots: &mut [Complex64], state: &mut [RootState], steps: &mut [usize]) -> usize {
        let n = roots.len();
        let mut best = vec![f64::INFINITY; n];
        let mut since_best = vec![0u32; n];
        let mut sweeps = 0;
        while sweeps < self.opts.max_iter && state.contains(&RootState::Active) {
            sweeps += 1;
            let current: &[Complex64] = roots;
            let live: &[RootState] = state;
            let updates = map_indices(n, self.opts.parallel, |i| {
                if live[i] != RootState::Active {
                    return None;
                }
                let lambda = current[i];
                let eval = charpoly_eval_with(self.spec, lambda, self.precision);
                let mut sum = Complex64::new(0.0, 0.0);
                for (j, &other) in current.iter().enumerate() {
                    let gap = lambda - other;
                    if j != i && (gap.re != 0.0 || gap.im != 0.0) {
                        sum += gap.inv();
                    }
                }
                Some((
                    aberth_step(eval.newton_ratio, sum),
                    eval.relative_residual() <= STALL_RESIDUAL,
                ))
            });
            for (i, update) in updates.into_iter().enumerate() {
                let Some((step, at_floor)) = update else { continue };
                steps[i] += 1;
                let Some(step) = step else {
                    since_best[i] += 1;
                    if since_best[i] >= STALL_PATIENCE {
                        state[i] = RootState::Stalled;
                    }
                    continue;
                };
                roots[i] -= step;
                let size = step.norm();
                let scale = 1.0 + roots[i].norm();
                if size <= self.tol() * scale {
                    state[i] = RootState::Converged;
                } else if size < best[i] {
                    best[i] = size;
                    since_best[i] = 0;
                } else if size <= STALL_ZONE * scale && at_floor {
                    since_best[i] += 1;
                    if since_best[i] >= STALL_PATIENCE {
                        state[i] = RootState::Stalled;
                    }
                }
            }
        }
        sweeps
    }
}

/// Solves for all `N` eigenvalues.
///
/// Non-convergence is reported through [`Spectrum::converged`], never by an
/// error; the only error is a pencil with a non-default diagonal.
pub fn compute_spectrum(spec: &PencilSpec, opts: &SolverOptions) -> Result<Spectrum> {
    if !spec.has_default_diagonal() {
        return Err(Error::NonDefaultDiagonal);
    }
    let n = spec.size();
    let mut roots = initial_guesses(spec, opts);
    let mut state = vec![RootState::Active; n];
    let mut steps = vec![0usize; n];

    let first = match opts.precision {
        PrecisionMode::Double => Precision::Double,
        PrecisionMode::DoubleDouble => Precision::DoubleDouble,
        PrecisionMode::Auto if n > AUTO_DOUBLE_DOUBLE_SIZE => Precision::DoubleDouble,
        PrecisionMode::Auto => Precision::Double,
    };
    let mut iterations = Phase {
        spec,
        opts,
        precision: first,
    }
    .run(&mut roots, &mut state, &mut steps);

    // A small binary64 step does not mean an accurate root near a multiple
    // root, where p is all rounding noise, so every root gets the
    // double-double pass. Simple roots finish it in a sweep or two.
    if opts.precision == PrecisionMode::Auto && first == Precision::Double {
        state.fill(RootState::Active);
        iterations += Phase {
            spec,
            opts,
            precision: Precision::DoubleDouble,
        }
        .run(&mut roots, &mut state, &mut steps);
    }

    let eigenvalues = cluster_roots(&roots, &steps, spec, opts)?;
    let stalled_ok = state.iter().zip(&roots).all(|(s, &z)| match s {
        RootState::Converged => true,
        RootState::Stalled => residual_at(spec, z) <= opts.residual_tolerance,
        RootState::Active => false,
    });
    let converged = stalled_ok && eigenvalues.iter().all(|e| e.residual <= opts.residual_tolerance);

    Ok(Spectrum {
        spec: *spec,
        eigenvalues,
        iterations,
        converged,
    })
}

fn residual_at(spec: &PencilSpec, lambda: Complex64) -> f64 {
    charpoly_eval_with(spec, lambda, Precision::DoubleDouble).relative_residual()
}

/// Groups `raw` roots lying within the cluster radius of each other into
/// eigenvalues with multiplicities, snaps near-real values to the axis and
/// re-polishes them.
pub fn classify_and_cluster(raw: &[Complex64], spec: &PencilSpec, opts: &SolverOptions) -> Result<Vec<Eigenvalue>> {
    let n = raw.len();
    cluster_roots(raw, &vec![0; n], spec, opts)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

fn by_position(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Largest double-double relative residual at a cluster centroid for the
/// cluster to count as one multiple root. Members of a genuine `k`-fold root
/// scatter around it, but their centroid is accurate to second order in the
/// scatter, so `p` there vanishes to the rounding floor. Distinct close roots,
/// such as a conjugate pair near the band edge, leave `|p''| b^2 / 2` at their
/// midpoint.
const MERGE_RESIDUAL: f64 = 1e-20;

/// Single-linkage clustering within the cluster radius, keeping only the
/// clusters whose centroid passes the [`MERGE_RESIDUAL`] test; the others are
/// split back into single roots.
fn cluster_roots(
    raw: &[Complex64],
    steps: &[usize],
    spec: &PencilSpec,
    opts: &SolverOptions,
) -> Result<Vec<Eigenvalue>> {
    let n = raw.len();
    if n != spec.size() {
        return Err(Error::ClusterCount {
            got: n,
            expected: spec.size(),
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| by_position(&raw[a], &raw[b]));

    let mut sets = UnionFind::new(n);
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            let reach = opts.cluster_radius * (1.0 + raw[i].norm().max(raw[j].norm()));
            if raw[j].re - raw[i].re > reach {
                break;
            }
            if (raw[i] - raw[j]).norm() <= reach {
                sets.union(i, j);
            }
        }
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for &i in &order {
        let root = sets.find(i);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(i);
    }

    let confirmed = map_indices(groups.len(), opts.parallel, |g| {
        let members = &groups[g];
        members.len() == 1 || residual_at(spec, merge_point(raw, members, opts)) <= MERGE_RESIDUAL
    });
    let groups: Vec<Vec<usize>> = groups
        .into_iter()
        .zip(confirmed)
        .flat_map(|(members, ok)| {
            if ok {
                vec![members]
            } else {
                members.into_iter().map(|i| vec![i]).collect()
            }
        })
        .collect();

    let total: usize = groups.iter().map(Vec::len).sum();
    if total != spec.size() {
        return Err(Error::ClusterCount {
            got: total,
            expected: spec.size(),
        });
    }

    let mut eigenvalues = map_indices(groups.len(), opts.parallel, |g| {
        let members = &groups[g];
        let k = members.len();
        let centroid = centroid(raw, members);
        let mut newton_steps = members.iter().map(|&i| steps[i]).max().unwrap_or(0);
        let is_real = centroid.im.abs() <= opts.real_threshold;
        let value = if is_real {
            let (x, polish) = polish_real(spec, centroid.re, k);
            newton_steps += polish;
            Complex64::new(x, 0.0)
        } else {
            centroid
        };
        Eigenvalue {
            value,
            residual: residual_at(spec, value),
            algebraic_multiplicity: k,
            is_real,
            newton_steps,
        }
    });
    eigenvalues.sort_by(|a, b| by_position(&a.value, &b.value));
    Ok(eigenvalues)
}

/// The centroid, projected to the real axis when it is within the real
/// threshold of it: members of a real multiple root leave a centroid with a
/// rounding-level imaginary part that alone would fail the merge test.
fn merge_point(raw: &[Complex64], members: &[usize], opts: &SolverOptions) -> Complex64 {
    let c = centroid(raw, members);
    if c.im.abs() <= opts.real_threshold {
        Complex64::new(c.re, 0.0)
    } else {
        c
    }
}

fn centroid(raw: &[Complex64], members: &[usize]) -> Complex64 {
    members.iter().map(|&i| raw[i]).sum::<Complex64>() / members.len() as f64
}

/// Real Newton in double-double, `x <- x - k Re(p / p')` for a root of
/// multiplicity `k`; a step is kept only if it lowers `|p|`.
fn polish_real(spec: &PencilSpec, start: f64, k: usize) -> (f64, usize) {
    let eval = |x: f64| charpoly_eval_with(spec, Complex64::new(x, 0.0), Precision::DoubleDouble);
    let mut x = start;
    let mut current = eval(x);
    let mut taken = 0;
    for _ in 0..8 {
        if current.value.is_zero() {
            break;
        }
        let step = k as f64 * current.newton_ratio.re;
        if !step.is_finite() || step == 0.0 {
            break;
        }
        let next = x - step;
        let trial = eval(next);
        if trial.value.log2_abs() >= current.value.log2_abs() {
            break;
        }
        x = next;
        current = trial;
        taken += 1;
    }
    (x, taken)
}

/// Simple real roots of `p` on `[-2 - |c|, 2 + |c|]`: zeros hit exactly by
/// the grid, and sign changes between consecutive non-zero samples refined by
/// bisection. Roots of even multiplicity do not change sign and are missed.
pub fn real_axis_scan(spec: &PencilSpec, opts: &SolverOptions) -> Vec<f64> {
    let points = opts.grid_points.max(2);
    let half = 2.0 + spec.c().abs();
    let precision = match opts.precision {
        PrecisionMode::DoubleDouble => Precision::DoubleDouble,
        _ => Precision::Double,
    };
    let sign = |x: f64| {
        let v = charpoly_eval_with(spec, Complex64::new(x, 0.0), precision).value;
        if v.is_zero() {
            0.0
        } else {
            v.mantissa().re.signum()
        }
    };
    let grid: Vec<f64> = (0..points)
        .map(|k| -half + 2.0 * half * k as f64 / (points - 1) as f64)
        .collect();
    let signs = map_indices(points, opts.parallel, |k| sign(grid[k]));

    let mut brackets = Vec::new();
    let mut roots = Vec::new();
    let mut last: Option<usize> = None;
    let mut zero_between = false;
    for k in 0..points {
        if signs[k] == 0.0 {
            roots.push(grid[k]);
            zero_between = true;
            continue;
        }
        if let Some(prev) = last {
            if signs[prev] != signs[k] && !zero_between {
                brackets.push((grid[prev], grid[k], signs[prev]));
            }
        }
        last = Some(k);
        zero_between = false;
    }

    let refined = map_indices(brackets.len(), opts.parallel, |b| {
        let (mut lo, mut hi, lo_sign) = brackets[b];
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let s = sign(mid);
            if s == 0.0 {
                return mid;
            }
            if s == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    });
    roots.extend(refined);
    roots.sort_by(f64::total_cmp);
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(m: usize, n: usize, c: f64) -> Spectrum {
        compute_spectrum(&PencilSpec::new(m, n, c).unwrap(), &SolverOptions::default()).unwrap()
    }

    #[test]
    fn two_by_two() {
        let s = solve(1, 1, 0.0);
        assert!(s.converged);
        assert_eq!(s.eigenvalues.len(), 2);
        assert!((s.eigenvalues[0].value - Complex64::new(0.0, -1.0)).norm() < 1e-14);
        assert!((s.eigenvalues[1].value - Complex64::new(0.0, 1.0)).norm() < 1e-14);
        assert!(s
            .eigenvalues
            .iter()
            .all(|e| !e.is_real && e.algebraic_multiplicity == 1));
    }

    #[test]
    fn four_by_four_sixth_roots() {
        let s = solve(2, 2, 0.0);
        assert!(s.converged);
        let e = Complex64::from_polar(1.0, std::f64::consts::PI / 6.0);
        for target in [e, e.conj(), -e, -e.conj()] {
            assert!(s.eigenvalues.iter().any(|x| (x.value - target).norm() < 1e-13));
        }
    }

    #[test]
    fn multiple_roots_of_three_four() {
        let s = solve(3, 4, 0.0);
        assert!(s.converged, "{s:?}");
        let got: Vec<(f64, usize)> = s
            .eigenvalues
            .iter()
            .map(|e| (e.value.re, e.algebraic_multiplicity))
            .collect();
        assert_eq!(got.len(), 3, "{got:?}");
        let r2 = 2f64.sqrt();
        assert!((got[0].0 + r2).abs() < 1e-10 && got[0].1 == 2);
        assert!(got[1].0.abs() < 1e-10 && got[1].1 == 3);
        assert!((got[2].0 - r2).abs() < 1e-10 && got[2].1 == 2);
        assert!(s.eigenvalues.iter().all(|e| e.is_real && e.value.im == 0.0));
    }

    #[test]
    fn guesses_distinct() {
        for (m, n, c) in [(10, 10, 0.0), (3, 7, 1.0), (11, 11, 0.02), (1, 1, 0.0)] {
            let spec = PencilSpec::new(m, n, c).unwrap();
            let g = initial_guesses(&spec, &SolverOptions::default());
            assert_eq!(g.len(), m + n);
            for i in 0..g.len() {
                for j in 0..i {
                    assert!((g[i] - g[j]).norm() > 1e-8);
                }
            }
        }
        // no real roots for (2, 2, 0.3): all four on the ellipse
        let g = initial_guesses(&PencilSpec::new(2, 2, 0.3).unwrap(), &SolverOptions::default());
        let semi = 0.9 * 2.3;
        assert!(g
            .iter()
            .all(|z| ((z.re / semi).powi(2) + (z.im / ELLIPSE_HEIGHT).powi(2) - 1.0).abs() < 1e-12));
    }

    #[test]
    fn raw_clusters_merge() {
        let spec = PencilSpec::new(3, 4, 0.0).unwrap();
        let r2 = 2f64.sqrt();
        let raw = [
            Complex64::new(r2 + 1e-9, 0.0),
            Complex64::new(r2 - 1e-9, 0.0),
            Complex64::new(-r2, 1e-9),
            Complex64::new(-r2, -1e-9),
            Complex64::new(1e-9, 0.0),
            Complex64::new(-1e-9, 1e-9),
            Complex64::new(0.0, -1e-9),
        ];
        let eig = classify_and_cluster(&raw, &spec, &SolverOptions::default()).unwrap();
        assert_eq!(eig.len(), 3);
        assert!((eig[2].value.re - r2).abs() < 1e-14 && eig[2].algebraic_multiplicity == 2);
        assert!(eig.iter().all(|e| e.is_real));
        assert!(classify_and_cluster(&raw[..5], &spec, &SolverOptions::default()).is_err());
    }

    #[test]
    fn raw_conjugates_stay_apart() {
        let spec = PencilSpec::new(1, 1, 0.0).unwrap();
        let raw = [Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)];
        let eig = classify_and_cluster(&raw, &spec, &SolverOptions::default()).unwrap();
        assert_eq!(eig.len(), 2);
        assert!(eig.iter().all(|e| !e.is_real && e.algebraic_multiplicity == 1));
    }

    #[test]
    fn scan_examples() {
        let opts = SolverOptions::default();
        assert!(real_axis_scan(&PencilSpec::new(1, 1, 0.0).unwrap(), &opts).is_empty());
        let roots = real_axis_scan(&PencilSpec::new(3, 4, 0.0).unwrap(), &opts);
        assert_eq!(roots.len(), 1);
        assert!(roots[0].abs() < 1e-12);
    }

    #[test]
    fn non_default_diagonal_rejected() {
        let spec = PencilSpec::with_diagonal(2, 2, 0.0, Complex64::new(2.0, 0.0), Complex64::new(-1.0, 0.0)).unwrap();
        assert_eq!(
            compute_spectrum(&spec, &SolverOptions::default()),
            Err(Error::NonDefaultDiagonal)
        );
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let spec = PencilSpec::new(20, 17, 0.4).unwrap();
        let par = compute_spectrum(&spec, &SolverOptions::default()).unwrap();
        let seq = compute_spectrum(
            &spec,
            &SolverOptions {
                parallel: false,
                ..SolverOptions::default()
            },
        )
        .unwrap();
        assert_eq!(par, seq);
    }

    #[test]
    fn hausdorff_basics() {
        let a = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let b = [Complex64::new(0.0, 0.5)];
        assert!((hausdorff(&a, &b) - 1.25f64.sqrt()).abs() < 1e-15);
        assert_eq!(hausdorff(&a, &a), 0.0);
    }
}
