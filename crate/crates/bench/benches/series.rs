use criterion::{black_box, criterion_group, criterion_main, Criterion};
use tzl_core::admissible::enumerate_tuples;
use tzl_core::lemma::lemma2_check;
use tzl_core::series::{log_zeta_k, log_zeta_k_deriv, prime_form_sum, WeightContext};
use tzl_core::sieve::{build_sieve, SieveTable};
use tzl_core::OffsetTuple;

fn table() -> SieveTable {
    build_sieve(10_000_010, 1 << 20).unwrap()
}

fn bench_series(c: &mut Criterion) {
    let table = table();
    let single = OffsetTuple::singleton();
    let pair: OffsetTuple = "0,2".parse().unwrap();
    let ctx1 = WeightContext::new(&single, &table);
    let ctx2 = WeightContext::new(&pair, &table);

    let mut group = c.benchmark_group("series");
    group.sample_size(20);
    group.bench_function("log_zeta_k1_s2_1e6", |b| {
        b.iter(|| log_zeta_k(black_box(2.0), 1_000_000, &ctx1).unwrap())
    });
    group.bench_function("deriv_twin_s1.1_1e7", |b| {
        b.iter(|| log_zeta_k_deriv(1, black_box(1.1), 10_000_000, &ctx2).unwrap())
    });
    group.bench_function("prime_form_twin_s1.1_1e7", |b| {
        b.iter(|| prime_form_sum(1, black_box(1.1), 10_000_000, &ctx2).unwrap())
    });
    group.finish();
}

fn bench_enumeration(c: &mut Criterion) {
    let table = table();
    let pair: OffsetTuple = "0,2".parse().unwrap();
    c.bench_function("enumerate_twins_1e7", |b| {
        b.iter(|| enumerate_tuples(&pair, black_box(10_000_000), &table).unwrap().len())
    });
}

fn bench_lemma(c: &mut Criterion) {
    let table = table();
    c.bench_function("lemma2_2_l2_s1.5_1e5", |b| {
        b.iter(|| lemma2_check(2, 2, black_box(1.5), 100_000, &table).unwrap())
    });
}

criterion_group!(benches, bench_series, bench_enumeration, bench_lemma);
criterion_main!(benches);
