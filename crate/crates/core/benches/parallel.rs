//! Parallel vs sequential throughput of the two data-parallel inner loops:
//! the baseline sweep grid and the oracle validation batch.
//!
//! With default features the parallel entry points run on the rayon pool;
//! `--no-default-features` makes both columns sequential.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use nuqc::oracle::validate::{self, ValidationConfig};
use nuqc::scan::{preset, sweep, sweep_serial, PresetName};

fn bench_sweep(c: &mut Criterion) {
    let p = preset(PresetName::Minos);
    let rs = [0.0, 0.25, 0.5, 1.0];
    let mut group = c.benchmark_group("sweep");
    for grid in [500usize, 5_000] {
        group.bench_with_input(BenchmarkId::new("parallel", grid), &grid, |b, &grid| {
            b.iter(|| sweep(&p, &rs, grid).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("serial", grid), &grid, |b, &grid| {
            b.iter(|| sweep_serial(&p, &rs, grid).unwrap())
        });
    }
    group.finish();
}

fn bench_validation(c: &mut Criterion) {
    // Concurrence + LQU suites only; the discord measurement search is two
    // orders of magnitude slower per sample and would drown the comparison.
    let config = ValidationConfig {
        samples_concurrence: 64,
        samples_lqu: 64,
        samples_discord: 0,
        ..Default::default()
    };
    let mut group = c.benchmark_group("validation");
    group.sample_size(20);
    group.bench_function("parallel", |b| b.iter(|| validate::run(&config)));
    group.bench_function("serial", |b| b.iter(|| validate::run_serial(&config)));
    group.finish();
}

criterion_group!(benches, bench_sweep, bench_validation);
criterion_main!(benches);
