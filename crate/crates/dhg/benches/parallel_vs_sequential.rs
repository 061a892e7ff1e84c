//! Compares the rayon-backed batch entry points against the always-compiled
//! sequential fallbacks on the three data-parallel workloads: path batches,
//! phase scans and inverse-Mellin contours.
//!
//! Run with `cargo bench -p dhg`. Building with
//! `--no-default-features` leaves only the sequential path, in which case
//! both variants measure the same code.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use dhg::dhgprocess::DhgParameters;
use dhg::doublebeta::Quadruple;
use dhg::expfunctional::MellinSpec;
use dhg::montecarlo::{
    simulate_ricochet_batch, simulate_ricochet_batch_sequential, SimulationConfig,
};
use dhg::ricochet::RicochetParameters;
use dhg::rssmp::phase_scan;

fn bench_path_batches(c: &mut Criterion) {
    let rp = RicochetParameters::new(1.5, 0.4, 0.5).unwrap();
    let mut group = c.benchmark_group("ricochet_batch");
    for &n in &[256usize, 1024] {
        let cfg = SimulationConfig { seed: 7, n_paths: n, dt: 1e-2, t_max: 5.0, x0: 1.0 };
        group.bench_with_input(BenchmarkId::new("parallel", n), &cfg, |b, cfg| {
            b.iter(|| simulate_ricochet_batch(&rp, cfg).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &cfg, |b, cfg| {
            b.iter(|| simulate_ricochet_batch_sequential(&rp, cfg).unwrap())
        });
    }
    group.finish();
}

fn bench_phase_scan(c: &mut Criterion) {
    let grid: Vec<f64> = (0..24).map(|i| i as f64 / 24.0 * 0.98).collect();
    let mut group = c.benchmark_group("phase_scan");
    group.bench_function("parallel", |b| {
        b.iter(|| phase_scan(1.5, 0.4, &grid, &grid).unwrap())
    });
    group.bench_function("sequential_rows", |b| {
        b.iter(|| {
            // Row-by-row sequential evaluation of the same grid.
            grid.iter()
                .map(|&p| phase_scan(1.5, 0.4, &[p], &grid).unwrap())
                .collect::<Vec<_>>()
        })
    });
    group.finish();
}

fn bench_inverse_mellin(c: &mut Criterion) {
    let params = DhgParameters::new(
        Quadruple::new(0.5, 1.1, 0.2, 0.9).unwrap(),
        Quadruple::new(0.6, 1.0, 0.3, 0.8).unwrap(),
    )
    .unwrap();
    let spec = MellinSpec::new(params, 2.0).unwrap();
    let grid: Vec<f64> = (1..=40).map(|i| 0.25 * i as f64).collect();
    c.bench_function("inverse_mellin_density_40pts", |b| {
        b.iter(|| spec.density_via_inverse_mellin(&grid).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_path_batches, bench_phase_scan, bench_inverse_mellin
}
criterion_main!(benches);
