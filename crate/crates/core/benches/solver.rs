use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use pencil_spectrum::parallel::{map_indices, parallel_available};
use pencil_spectrum::{charpoly_eval_with, compute_spectrum, PencilSpec, Precision, SolverOptions};

fn spectrum(c: &mut Criterion) {
    let mut group = c.benchmark_group("compute_spectrum");
    group.sample_size(10);
    for m in [100, 250] {
        let spec = PencilSpec::new(m, m, 5f64.sqrt() / 2.0).unwrap();
        for parallel in [false, true] {
            if parallel && !parallel_available() {
                continue;
            }
            let opts = SolverOptions {
                parallel,
                ..SolverOptions::default()
            };
            let label = if parallel { "rayon" } else { "sequential" };
            group.bench_with_input(BenchmarkId::new(label, m), &spec, |b, spec| {
                b.iter(|| compute_spectrum(black_box(spec), &opts).unwrap())
            });
        }
    }
    group.finish();
}

/// One Aberth sweep's worth of evaluations, the unit of work that is spread
/// over the pool.
fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("newton_ratios");
    let size = 1000;
    let spec = PencilSpec::new(size / 2, size / 2, 0.3).unwrap();
    let points: Vec<Complex64> = (0..size)
        .map(|k| Complex64::from_polar(1.5, std::f64::consts::TAU * (k as f64 + 0.5) / size as f64))
        .collect();
    for precision in [Precision::Double, Precision::DoubleDouble] {
        for parallel in [false, true] {
            if parallel && !parallel_available() {
                continue;
            }
            let label = format!("{precision:?}/{}", if parallel { "rayon" } else { "sequential" });
            group.bench_function(label, |b| {
                b.iter(|| {
                    map_indices(size, parallel, |k| {
                        charpoly_eval_with(&spec, black_box(points[k]), precision).newton_ratio
                    })
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, spectrum, sweep);
criterion_main!(benches);
