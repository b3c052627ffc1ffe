use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use orbit_ideals::{
    minimal_schedule, minor, sample_orbit, v_span_basis, vanishing_check, verify_redundant,
    Partition, VerifyOptions,
};

fn partition(s: &str) -> Partition {
    s.parse().unwrap()
}

fn schedules(c: &mut Criterion) {
    let mu = partition("4,2^3,1^5");
    c.bench_function("minimal_schedule 4,2^3,1^5", |b| {
        b.iter(|| minimal_schedule(black_box(&mu)))
    });
}

fn polynomials(c: &mut Criterion) {
    let rows: Vec<usize> = (1..=5).collect();
    c.bench_function("determinant n=5", |b| {
        b.iter(|| minor(5, black_box(&rows), black_box(&rows)).unwrap())
    });
    c.bench_function("v_span_basis n=4 i=2 p=3", |b| {
        b.iter(|| v_span_basis(4, 2, black_box(3)).unwrap())
    });
}

fn orbits(c: &mut Criterion) {
    let mu = partition("3,2,1");
    c.bench_function("sample_orbit 3,2,1", |b| {
        b.iter(|| sample_orbit(black_box(&mu), 0).unwrap())
    });
    c.bench_function("vanishing_check 3,2,1 i=2", |b| {
        b.iter(|| vanishing_check(&mu, 2, 4, 10, 0).unwrap())
    });
}

fn membership(c: &mut Criterion) {
    let mu = partition("2,2");
    let options = VerifyOptions::default();
    let mut group = c.benchmark_group("membership");
    group.sample_size(20);
    group.bench_function("redundancy 2,2 degree 3", |b| {
        b.iter(|| verify_redundant(&mu, 2, &options).unwrap())
    });
    group.finish();
}

criterion_group!(benches, schedules, polynomials, orbits, membership);
criterion_main!(benches);
