use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fixtrace_core::moments::flue_tq_moment_sum_with;
use fixtrace_core::sampling::{sample_flue, sample_sun, RngSpec};
use fixtrace_core::{EnsembleParams, Execution};

fn variants() -> [(&'static str, Execution); 2] {
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel { jobs: None })]
}

fn composition_sum(c: &mut Criterion) {
    let mut g = c.benchmark_group("composition_sum");
    g.sample_size(10);
    let p = EnsembleParams::unitary(6, 2).unwrap();
    for (label, exec) in variants() {
        g.bench_with_input(BenchmarkId::new(label, "N=6 a=2 q=2 k=6"), &exec, |b, &exec| {
            b.iter(|| flue_tq_moment_sum_with(black_box(&p), 2, 6, exec).unwrap())
        });
    }
    g.finish();
}

fn sampling(c: &mut Criterion) {
    let mut g = c.benchmark_group("sampling");
    g.sample_size(10);
    let p = EnsembleParams::unitary(16, 16).unwrap();
    let rng = RngSpec::new(1);
    for (label, exec) in variants() {
        g.bench_with_input(BenchmarkId::new(label, "fLUE N=16 a=16 x8000"), &exec, |b, &exec| {
            b.iter(|| sample_flue(black_box(&p), 8000, &rng, exec).unwrap())
        });
        g.bench_with_input(BenchmarkId::new(label, "SU(8) x8000"), &exec, |b, &exec| {
            b.iter(|| sample_sun(8, 8000, &rng, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, composition_sum, sampling);
criterion_main!(benches);
