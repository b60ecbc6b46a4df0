use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use padic_eisenstein::exec::Executor;
use padic_eisenstein::fourier::AmiceMeasure;
use padic_eisenstein::rings::PAdicRing;
use padic_eisenstein::series::TruncSeries;
use padic_eisenstein::verify::{run_suites, Suite};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

const EXECUTORS: [(&str, Executor); 2] = [("sequential", Executor::Sequential), ("parallel", Executor::Parallel)];

fn restriction(c: &mut Criterion) {
    let (p, prec, d) = (5u64, 6u32, 175i64);
    let r = PAdicRing::new(p, prec).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let terms: Vec<_> = (0..d).map(|e| (e, r.from_u64(rng.gen_range(0..r.modulus())))).collect();
    let mu = AmiceMeasure::new(p, TruncSeries::from_terms(&r, terms, d), 0).unwrap();
    let ks: Vec<u32> = (1..=16).collect();

    let mut group = c.benchmark_group("restrict_units");
    for (name, exec) in EXECUTORS {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| mu.restrict_units_with(exec, black_box(&ks), prec).unwrap())
        });
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_all");
    group.sample_size(10);
    for (name, exec) in EXECUTORS {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| run_suites(&Suite::ALL, exec, black_box(2024)))
        });
    }
    group.finish();
}

criterion_group!(benches, restriction, suites);
criterion_main!(benches);
