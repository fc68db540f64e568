//! Batch order checks on generated pairs, rayon pool against a plain loop.
//! Build with `--no-default-features` to see `map_seeds` fall back to the
//! sequential path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use minusord::batch::{map_seeds, map_seeds_sequential};
use minusord::gen::{self, PairKind, PairSpec};
use minusord::orders::{self, OrderKind};
use minusord::ToleranceConfig;

fn check_seed(seed: u64, n: usize) -> bool {
    let spec = PairSpec {
        kind: PairKind::Minus,
        rows: n,
        cols: n,
        rank_a: n / 3,
        rank_b: n / 3,
    };
    let pair = gen::generate(&spec, seed).expect("feasible");
    orders::check(OrderKind::Minus, &pair.a, &pair.sum(), &ToleranceConfig::default())
        .map(|r| r.holds)
        .unwrap_or(false)
}

fn bench_batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("minus_checks");
    let seeds = 256u64;
    group.throughput(Throughput::Elements(seeds));
    for n in [4usize, 8] {
        group.bench_with_input(BenchmarkId::new("map_seeds", n), &n, |b, &n| {
            b.iter(|| map_seeds(0..seeds, |s| check_seed(s, n)))
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
            b.iter(|| map_seeds_sequential(0..seeds, |s| check_seed(s, n)))
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_batch
}
criterion_main!(benches);
