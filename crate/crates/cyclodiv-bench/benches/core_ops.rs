//! Benchmarks for the hot paths: cyclotomic generation, classification,
//! prime-by-prime verification, splitting tests, and integer factoring.
//!
//! Run with `cargo bench -p cyclodiv-bench`.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use cyclodiv_core::cyclotomic::{classify_cyclotomic_product, cyclotomic, CycloFactorization};
use cyclodiv_core::galois::split_density;
use cyclodiv_core::numtheory::{factor_u64, FactorBudget};
use cyclodiv_core::verifier::{check_at_prime, find_failing_prime, scan};
use cyclodiv_core::{zsigmondy, IntPoly};

fn bench_cyclotomic_generation(c: &mut Criterion) {
    c.bench_function("cyclotomic_105", |b| {
        b.iter(|| cyclotomic(black_box(105)).unwrap())
    });
    c.bench_function("cyclotomic_1000", |b| {
        b.iter(|| cyclotomic(black_box(1000)).unwrap())
    });
}

fn bench_classification(c: &mut Criterion) {
    // x^2 * Phi_1^2 * Phi_12^3 * Phi_30: degree 60 with repeated factors.
    let cert = CycloFactorization::new(2, vec![(1, 2), (12, 3), (30, 1)]).unwrap();
    let f = cert.expand().unwrap();
    c.bench_function("classify_degree_60_family_member", |b| {
        b.iter(|| classify_cyclotomic_product(black_box(&f)).unwrap())
    });
}

fn bench_verification(c: &mut Criterion) {
    let f = IntPoly::from_i64_coeffs(&[1, 1, 1]); // x^2 + x + 1
    c.bench_function("check_at_prime_997", |b| {
        b.iter(|| check_at_prime(black_box(&f), black_box(997)).unwrap())
    });
    c.bench_function("scan_primes_to_500", |b| {
        b.iter(|| scan(black_box(&f), 2, 500).unwrap())
    });
    let g = IntPoly::from_i64_coeffs(&[-2, 0, 1]); // x^2 - 2
    c.bench_function("find_failing_prime_x2_minus_2", |b| {
        b.iter(|| find_failing_prime(black_box(&g), 10_000).unwrap())
    });
}

fn bench_splitting(c: &mut Criterion) {
    let f = cyclotomic(12).unwrap();
    c.bench_function("split_density_phi12_to_10000", |b| {
        b.iter(|| split_density(black_box(&f), 10_000).unwrap())
    });
}

fn bench_factoring(c: &mut Criterion) {
    c.bench_function("factor_u64_semiprime", |b| {
        b.iter(|| factor_u64(black_box(1_000_003 * 1_000_033)))
    });
    let budget = FactorBudget::default();
    c.bench_function("zsigmondy_analyze_10_24", |b| {
        b.iter(|| zsigmondy::analyze(black_box(10), black_box(24), &budget).unwrap())
    });
}

criterion_group!(
    benches,
    bench_cyclotomic_generation,
    bench_classification,
    bench_verification,
    bench_splitting,
    bench_factoring
);
criterion_main!(benches);
