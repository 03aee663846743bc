use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use l1l2_core::sample::random_subspace;
use l1l2_core::subspace_bound::{
    restart_rng, subspace_constant_exact_with, subspace_constant_heuristic_with,
};
use l1l2_core::{Execution, Field};

const STRATEGIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn exact_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_search");
    group.sample_size(10);
    for n in [14, 16, 18, 20] {
        let s = random_subspace(&mut restart_rng(n as u64, 0), Field::Real, n, n / 3);
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, n), &s, |b, s| {
                b.iter(|| subspace_constant_exact_with(black_box(s), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn heuristic_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("heuristic_search");
    group.sample_size(10);
    for (n, field) in [(32, Field::Real), (64, Field::Real), (32, Field::Complex)] {
        let s = random_subspace(&mut restart_rng(n as u64, 1), field, n, n / 4);
        let label = format!("{}_{n}", field.as_str());
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, &label), &s, |b, s| {
                b.iter(|| subspace_constant_heuristic_with(black_box(s), 32, 0, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, exact_search, heuristic_search);
criterion_main!(benches);
