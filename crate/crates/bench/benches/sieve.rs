use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use tzl_core::sieve::build_sieve;

fn bench_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("sieve_build");
    group.sample_size(10);
    for limit in [1_000_000u64, 10_000_000, 100_000_000] {
        group.throughput(Throughput::Elements(limit));
        group.bench_with_input(BenchmarkId::from_parameter(limit), &limit, |b, &limit| {
            b.iter(|| build_sieve(black_box(limit), 1 << 20).unwrap());
        });
    }
    group.finish();
}

fn bench_segment_sizes(c: &mut Criterion) {
    let mut group = c.benchmark_group("sieve_segment_size");
    group.sample_size(10);
    for seg in [1u64 << 12, 1 << 16, 1 << 20] {
        group.bench_with_input(BenchmarkId::from_parameter(seg), &seg, |b, &seg| {
            b.iter(|| build_sieve(black_box(10_000_000), seg).unwrap());
        });
    }
    group.finish();
}

fn bench_queries(c: &mut Criterion) {
    let table = build_sieve(10_000_000, 1 << 20).unwrap();
    c.bench_function("psi_1e7", |b| {
        b.iter(|| table.chebyshev_psi(black_box(10_000_000)).unwrap())
    });
    c.bench_function("mobius_batch", |b| {
        b.iter(|| {
            let mut acc = 0i64;
            for n in 1_000_000..1_001_000u64 {
                acc += table.mobius(black_box(n)).unwrap() as i64;
            }
            acc
        })
    });
}

criterion_group!(benches, bench_build, bench_segment_sizes, bench_queries);
criterion_main!(benches);
