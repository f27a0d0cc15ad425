use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rigidsep::check::{
    is_hereditarily_rigid_antichain, is_hereditarily_rigid_definitional, is_minimal_profile, is_separating,
};
use rigidsep::construct::optimal_tournament_family;
use rigidsep_bench::{cyclic, one_short, separating};

fn checkers(c: &mut Criterion) {
    let mut group = c.benchmark_group("checkers");
    for m in [6, 9, 12] {
        let fam = separating(m);
        group.bench_with_input(BenchmarkId::new("separating", m), &fam, |b, f| {
            b.iter(|| is_separating(black_box(f)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("minimal_profile", m), &fam, |b, f| {
            b.iter(|| is_minimal_profile(black_box(f), 0).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("definitional", m), &fam, |b, f| {
            b.iter(|| is_hereditarily_rigid_definitional(black_box(f)))
        });
        group.bench_with_input(BenchmarkId::new("antichain", m), &fam, |b, f| {
            b.iter(|| is_hereditarily_rigid_antichain(black_box(f)))
        });
    }
    let fam = cyclic(10);
    group.bench_function("separating_cyclic/10", |b| b.iter(|| is_separating(black_box(&fam)).unwrap()));
    let fam = one_short(7);
    group.bench_function("separating_collision/7", |b| b.iter(|| is_separating(black_box(&fam)).unwrap()));
    group.finish();
}

fn tournaments(c: &mut Criterion) {
    c.bench_function("optimal_tournament_family/256", |b| {
        b.iter(|| optimal_tournament_family(black_box(256)).unwrap())
    });
    let fam = optimal_tournament_family(64).unwrap();
    c.bench_function("separating_tournaments/64", |b| b.iter(|| is_separating(black_box(&fam)).unwrap()));
}

criterion_group!(benches, checkers, tournaments);
criterion_main!(benches);
