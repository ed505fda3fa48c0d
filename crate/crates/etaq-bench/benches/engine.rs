//! Benchmarks for the hot paths: series expansion, exact-formula evaluation,
//! Kloosterman sums, and twisted multiplier sums.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use etaq_core::exactformula::{c1_exact, c2_exact};
use etaq_core::multiplier::{a_k_reduced, kloosterman_k, omega};
use etaq_core::qseries::expand;
use etaq_core::EtaQuotientSpec;

fn bench_expand(c: &mut Criterion) {
    let spec: EtaQuotientSpec = "1^1,5^-2".parse().unwrap();
    c.bench_function("expand 1^1,5^-2 to 10^4", |b| {
        b.iter(|| expand(black_box(&spec), black_box(10_000)))
    });
}

fn bench_exact(c: &mut Criterion) {
    c.bench_function("c1_exact n=100 cap=250", |b| {
        b.iter(|| c1_exact(black_box(100), black_box(250)).unwrap())
    });
    c.bench_function("c2_exact n=100 cap=200", |b| {
        b.iter(|| c2_exact(black_box(100), black_box(200)).unwrap())
    });
}

fn bench_kloosterman(c: &mut Criterion) {
    c.bench_function("kloosterman_k k=997 n=m=1", |b| {
        b.iter(|| kloosterman_k(black_box(997), black_box(1), black_box(1)))
    });
}

fn bench_multiplier(c: &mut Criterion) {
    c.bench_function("omega over k=360", |b| {
        b.iter(|| {
            for h in (1..360).filter(|h| num_gcd(*h, 360) == 1) {
                black_box(omega(black_box(h), 360).unwrap());
            }
        })
    });
    c.bench_function("a_k_reduced k=200 n=17", |b| {
        b.iter(|| a_k_reduced(black_box(200), black_box(17)).unwrap())
    });
}

fn num_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn short() -> Criterion {
    Criterion::default().sample_size(10)
}

criterion_group! {
    name = benches;
    config = short();
    targets = bench_expand, bench_exact, bench_kloosterman, bench_multiplier
}
criterion_main!(benches);
