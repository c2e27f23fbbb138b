//! Criterion benches over the data-parallel hot paths. Run with the default
//! features for the rayon build and with `--no-default-features` for the
//! sequential baseline; the numbers are directly comparable because both
//! paths produce identical output.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use ksets::arrangement::{build_arrangement, enumerate_edges};
use ksets::generate::{generate_instance, GenSpec, Shape};
use ksets::graph::{build_dey_graph, crossing_number};
use ksets::instance::Instance;
use ksets::ksets::{enumerate_all_directed, Side};
use ksets::verify::{sweep, verify_instance, KChoice, SweepConfig};

fn instance(n: usize, seed: u64) -> Instance {
    generate_instance(&GenSpec {
        shape: Shape::Uniform,
        n,
        range: 10_000,
        seed,
    })
    .unwrap()
}

fn bench_arrangement(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_arrangement");
    group.sample_size(20);
    for n in [12, 24, 48] {
        let inst = instance(n, 11);
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| black_box(build_arrangement(inst)))
        });
    }
    group.finish();
}

fn bench_edges(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_edges");
    group.sample_size(20);
    for n in [12, 24] {
        let inst = instance(n, 12);
        let arr = build_arrangement(&inst);
        group.bench_with_input(BenchmarkId::from_parameter(n), &arr, |b, arr| {
            b.iter(|| black_box(enumerate_edges(arr)))
        });
    }
    group.finish();
}

fn bench_ksets(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_all_directed");
    group.sample_size(20);
    for n in [12, 24] {
        let inst = instance(n, 13);
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| black_box(enumerate_all_directed(inst, Side::Above)))
        });
    }
    group.finish();
}

fn bench_crossings(c: &mut Criterion) {
    let mut group = c.benchmark_group("crossing_number");
    group.sample_size(20);
    for n in [16, 24] {
        let inst = instance(n, 14);
        let arr = build_arrangement(&inst);
        let g = build_dey_graph(&inst, &arr, n / 2).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| black_box(crossing_number(g)))
        });
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_instance");
    group.sample_size(10);
    for n in [10, 16] {
        let inst = instance(n, 15);
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| black_box(verify_instance(inst, n / 2).unwrap()))
        });
    }
    group.finish();
}

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    let cfg = SweepConfig {
        n: 10,
        k: KChoice::One(5),
        trials: 16,
        seed: 99,
        shape: Shape::Uniform,
        range: 1000,
    };
    group.bench_function("n10_k5_16trials", |b| b.iter(|| black_box(sweep(&cfg))));
    group.finish();
}

criterion_group!(
    benches,
    bench_arrangement,
    bench_edges,
    bench_ksets,
    bench_crossings,
    bench_verify,
    bench_sweep
);
criterion_main!(benches);
