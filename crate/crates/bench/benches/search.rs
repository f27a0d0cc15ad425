use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rigidsep::search::{exists_separating_lin, exists_separating_tour, SearchBudget, SymmetryFlags};
use rigidsep_bench::SEARCH_CASES;

fn budget(threads: usize) -> SearchBudget {
    SearchBudget::new(u64::MAX, Duration::from_secs(600), threads).unwrap()
}

fn linear(c: &mut Criterion) {
    let mut group = c.benchmark_group("exists_separating_lin");
    group.sample_size(10);
    for &(m, n) in SEARCH_CASES {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{m}x{n}")), &(m, n), |b, &(m, n)| {
            b.iter(|| exists_separating_lin(m, n, &budget(1)).unwrap())
        });
    }
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    group.bench_function(format!("6x4/threads={threads}"), |b| {
        b.iter(|| exists_separating_lin(6, 4, &budget(threads)).unwrap())
    });
    group.finish();
}

fn tournament(c: &mut Criterion) {
    let mut group = c.benchmark_group("exists_separating_tour");
    group.sample_size(10);
    for (m, n) in [(4, 3), (5, 4), (5, 5)] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{m}x{n}")), &(m, n), |b, &(m, n)| {
            b.iter(|| exists_separating_tour(m, n, &budget(1), SymmetryFlags::ALL).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, linear, tournament);
criterion_main!(benches);
