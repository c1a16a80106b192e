//! Library results against independently computed values.

use std::f64::consts::PI;

use num_complex::Complex64;
use pencil_spectrum::analytic::{beta, f_ratio, f_tilde, imag_axis_root, lambda_to_zw, r1, r2, Extended};
use pencil_spectrum::pencil::{delta_nc, h_eigenvalues};
use pencil_spectrum::rootfinder::{hausdorff, real_axis_scan};
use pencil_spectrum::{charpoly_eval, charpoly_eval_with, compute_spectrum, PencilSpec, Precision, SolverOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Laplace expansion along the first row; exponential, fine for `N <= 8`.
fn cofactor_det(a: &[Vec<Complex64>]) -> Complex64 {
    if a.len() == 1 {
        return a[0][0];
    }
    (0..a.len())
        .filter(|&j| a[0][j] != cx(0.0, 0.0))
        .map(|j| {
            let minor: Vec<Vec<Complex64>> = a[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * a[0][j] * cofactor_det(&minor)
        })
        .sum()
}

fn pencil_matrix(m: usize, n: usize, c: f64, lambda: Complex64) -> Vec<Vec<Complex64>> {
    let size = m + n;
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| match i.abs_diff(j) {
                    0 => c - lambda * if i < m { 1.0 } else { -1.0 },
                    1 => cx(1.0, 0.0),
                    _ => cx(0.0, 0.0),
                })
                .collect()
        })
        .collect()
}

#[test]
fn recurrence_matches_cofactor_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for size in 1..=8 {
        for m in 1..size {
            let n = size - m;
            for _ in 0..40 {
                let c = rng.random_range(-3.0..3.0);
                let lambda = cx(rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0));
                let spec = PencilSpec::new(m, n, c).unwrap();
                let want = cofactor_det(&pencil_matrix(m, n, c, lambda));
                for precision in [Precision::Double, Precision::DoubleDouble] {
                    let got = charpoly_eval_with(&spec, lambda, precision).value.to_complex();
                    assert!(
                        (got - want).norm() <= 1e-12 * want.norm(),
                        "({m},{n},{c}) at {lambda}: {got} vs {want}"
                    );
                }
            }
        }
    }
}

#[test]
fn derivative_matches_central_difference() {
    let spec = PencilSpec::new(4, 3, 0.4).unwrap();
    let lambda = cx(0.3, 0.7);
    let h = 1e-5;
    let fd = (cofactor_det(&pencil_matrix(4, 3, 0.4, lambda + h))
        - cofactor_det(&pencil_matrix(4, 3, 0.4, lambda - h)))
        / (2.0 * h);
    let got = charpoly_eval(&spec, lambda).derivative.to_complex();
    assert!((got - fd).norm() <= 1e-8 * fd.norm());
}

#[test]
fn leading_coefficient() {
    // p(lambda) = (-1)^m lambda^N (1 - c(m - n)/lambda + O(lambda^-2)): the
    // diagonal of -lambda D is (-1 x m, +1 x n)
    for (m, n) in [(1, 1), (3, 4), (5, 2), (1, 6)] {
        let spec = PencilSpec::new(m, n, 0.8).unwrap();
        let lambda = cx(1e6, 0.0);
        let p = charpoly_eval(&spec, lambda).value;
        let lead = pencil_spectrum::ScaledValue::powu(lambda, (m + n) as u64);
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let ratio = p.ratio(&lead);
        assert!((ratio - sign).norm() < 1e-5, "({m},{n}): {ratio}");
        let two_terms = sign * (1.0 - 0.8 * (m as f64 - n as f64) / lambda);
        assert!((ratio - two_terms).norm() < 1e-10, "({m},{n}): {ratio}");
    }
}

#[test]
fn small_spectra_in_closed_form() {
    let opts = SolverOptions::default();
    // -lambda^2 - 1
    let s = compute_spectrum(&PencilSpec::new(1, 1, 0.0).unwrap(), &opts).unwrap();
    assert!(hausdorff(&s.values(), &[cx(0.0, 1.0), cx(0.0, -1.0)]) < 1e-14);
    // lambda^4 - lambda^2 + 1, roots are the primitive twelfth roots of unity
    let s = compute_spectrum(&PencilSpec::new(2, 2, 0.0).unwrap(), &opts).unwrap();
    let twelfth: Vec<Complex64> = [1, 5, 7, 11]
        .iter()
        .map(|&k| Complex64::from_polar(1.0, PI * k as f64 / 6.0))
        .collect();
    assert!(hausdorff(&s.values(), &twelfth) < 1e-14);
    assert!(s
        .eigenvalues
        .iter()
        .all(|e| !e.is_real && e.algebraic_multiplicity == 1));
}

/// Roots `2cos(pi r/(m+1))` of `det(H_m - lambda)`, each twice, and 0 to
/// make up the count.
#[test]
fn n_equals_m_plus_one_matches_factorization() {
    let opts = SolverOptions::default();
    for m in [5, 10, 11, 40] {
        let s = compute_spectrum(&PencilSpec::new(m, m + 1, 0.0).unwrap(), &opts).unwrap();
        assert!(s.converged);
        assert_eq!(s.total_multiplicity(), 2 * m + 1);
        let mut expected: Vec<(f64, usize)> = (1..=m)
            .map(|r| (2.0 * (PI * r as f64 / (m + 1) as f64).cos(), 2))
            .collect();
        if m % 2 == 1 {
            // q_m vanishes at 0 for odd m
            expected.retain(|(x, _)| x.abs() > 1e-12);
            expected.push((0.0, 3));
        } else {
            expected.push((0.0, 1));
        }
        expected.sort_by(|a, b| a.0.total_cmp(&b.0));
        assert_eq!(s.eigenvalues.len(), expected.len(), "m = {m}");
        for (e, (x, k)) in s.eigenvalues.iter().zip(&expected) {
            assert!(
                e.is_real && (e.value.re - x).abs() < 1e-9 && e.algebraic_multiplicity == *k,
                "m = {m}: {:?} vs {x}",
                e
            );
        }
    }
}

#[test]
fn real_case_agrees_with_sign_scan() {
    let opts = SolverOptions::default();
    let spec = PencilSpec::new(50, 50, 2.2).unwrap();
    let s = compute_spectrum(&spec, &opts).unwrap();
    assert_eq!(s.eigenvalues.len(), 100);
    let scan = real_axis_scan(&spec, &opts);
    assert_eq!(scan.len(), 100);
    for (e, x) in s.eigenvalues.iter().zip(&scan) {
        assert!(e.is_real && (e.value.re - x).abs() < 1e-9);
    }
}

#[test]
fn trace_and_product_identities() {
    let opts = SolverOptions::default();
    for (m, n, c) in [(7, 9, 0.3), (30, 30, 1.1), (25, 40, -0.6), (60, 59, 0.0)] {
        let s = compute_spectrum(&PencilSpec::new(m, n, c).unwrap(), &opts).unwrap();
        let (sum_err, prod_err) = s.newton_identity_errors();
        let tol = 1e-8 * (m + n) as f64;
        assert!(
            sum_err <= tol && prod_err <= tol,
            "({m},{n},{c}): {sum_err:e} {prod_err:e}"
        );
    }
}

#[test]
fn delta_from_dense_eigenvalues() {
    // H_{N;c} has eigenvalues c + 2cos(pi k/(N+1))
    for (size, c) in [(2, 0.0), (5, 0.3), (70, 1.7)] {
        let want = (1..=size)
            .map(|k| (c + 2.0 * (PI * k as f64 / (size + 1) as f64).cos()).abs())
            .fold(f64::INFINITY, f64::min);
        assert!((delta_nc(size, c) - want).abs() < 1e-14);
        assert_eq!(h_eigenvalues(size, c).len(), size);
    }
}

#[test]
fn f_and_f_tilde_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let zeta = Complex64::from_polar(rng.random_range(1.05..3.0), rng.random_range(0.0..2.0 * PI));
        let m = rng.random_range(1..=50);
        let a = f_ratio(m, zeta).unwrap();
        let Extended::Finite(b) = f_tilde(m, zeta + zeta.inv()).unwrap() else {
            panic!("pole at {zeta}");
        };
        assert!((a - b).norm() <= 1e-11 * a.norm(), "m = {m}, zeta = {zeta}");
    }
}

#[test]
fn beta_factorizes_on_the_diagonal() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let z = Complex64::from_polar(rng.random_range(0.9..1.3), rng.random_range(0.0..2.0 * PI));
        let m = rng.random_range(1..=200);
        let lhs = beta(m, m, z, z).unwrap() * z.powu(2 * m as u32 + 2);
        let rhs = r1(m, z) * r2(m, z);
        assert!(
            (lhs - rhs).norm() <= 1e-10 * rhs.norm().max(lhs.norm()),
            "m = {m}, z = {z}"
        );
    }
}

#[test]
fn r_polynomials_under_inversion_and_on_the_axis() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let m = rng.random_range(1..=30);
        let z = Complex64::from_polar(rng.random_range(0.8..1.2), rng.random_range(0.0..2.0 * PI));
        let scale = -z.powi(-(2 * m as i32) - 2);
        for r in [r1, r2] {
            let want = scale * r(m, z);
            assert!((r(m, z.inv()) - want).norm() <= 1e-11 * want.norm());
        }
        let y: f64 = rng.random_range(0.5..1.5);
        let sign = if m % 2 == 0 { -1.0 } else { 1.0 };
        let want = sign * (y - 1.0) * y.powi(2 * m as i32 + 1) - (y + 1.0);
        assert!((r2(m, cx(0.0, y)) - want).norm() <= 1e-11 * (1.0 + want.abs()));
    }
}

#[test]
fn imaginary_eigenvalue_of_odd_pencils() {
    let opts = SolverOptions::default();
    for m in [3, 9, 21] {
        let y = imag_axis_root(m).unwrap();
        let want = cx(0.0, y - 1.0 / y);
        let s = compute_spectrum(&PencilSpec::new(m, m, 0.0).unwrap(), &opts).unwrap();
        let nearest = s
            .values()
            .iter()
            .map(|z| (z - want).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(nearest < 1e-10, "m = {m}");
        // and z = iy is the substitution at that eigenvalue
        let zw = lambda_to_zw(want, 0.0);
        assert!((zw.z - cx(0.0, y)).norm() < 1e-12);
    }
}
