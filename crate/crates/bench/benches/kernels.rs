use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mvfunc_bench::Fixture;
use mvfunc_core::ProductKind;

fn products(c: &mut Criterion) {
    let mut group = c.benchmark_group("geometric_product");
    for n in [3, 5, 8] {
        let f = Fixture::new(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |bench, f| {
            bench.iter(|| black_box(&f.a).gp(black_box(&f.b)))
        });
    }
    group.finish();
}

fn directional(c: &mut Criterion) {
    let mut group = c.benchmark_group("a_dot_dt");
    for n in [3, 4, 6] {
        let f = Fixture::new(n);
        group.bench_with_input(BenchmarkId::new("dot_of_images", n), &f, |bench, f| {
            bench.iter(|| f.dot.a_dot_dt(black_box(&f.h), black_box(&f.direction)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("det", n), &f, |bench, f| {
            bench.iter(|| f.det.a_dot_dt(black_box(&f.h), black_box(&f.direction)).unwrap())
        });
    }
    group.finish();
}

fn gradient(c: &mut Criterion) {
    let mut group = c.benchmark_group("dt_star_det");
    for n in [3, 4, 6] {
        let f = Fixture::new(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |bench, f| {
            bench.iter(|| f.det.dt_star(black_box(&f.h), ProductKind::Geometric).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, products, directional, gradient);
criterion_main!(benches);
