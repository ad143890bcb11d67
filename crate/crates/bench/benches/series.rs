use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use threeweb::circular::{self, LinearModel};
use threeweb::curvature::blaschke_curvature;
use threeweb::normalform::normalize;
use threeweb::Series1;
use threeweb_bench::{sample_map, sample_v, sample_web};

fn arithmetic(c: &mut Criterion) {
    let mut group = c.benchmark_group("series");
    for order in [6, 9, 12] {
        let f = sample_web(order).f().clone();
        let m = sample_map(order);
        group.bench_with_input(BenchmarkId::new("mul", order), &order, |b, _| b.iter(|| black_box(&f * &f)));
        group.bench_with_input(BenchmarkId::new("compose", order), &order, |b, _| {
            b.iter(|| black_box(f.compose(&m).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("invert_map", order), &order, |b, _| {
            b.iter(|| black_box(m.invert().unwrap()))
        });
    }
    group.finish();
}

fn pipelines(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(20);
    for order in [6, 9, 12] {
        let w = sample_web(order);
        group.bench_with_input(BenchmarkId::new("normalize", order), &w, |b, w| {
            b.iter(|| black_box(normalize(w).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("curvature", order), &w, |b, w| {
            b.iter(|| black_box(blaschke_curvature(w).unwrap()))
        });
    }
    let v = sample_v(9);
    group.bench_function("solve_circular/9", |b| {
        b.iter(|| black_box(circular::solve_circular(&v, &Series1::identity(9), LinearModel::Order3, 9).unwrap()))
    });
    group.bench_function("theorem3_example/10", |b| b.iter(|| black_box(circular::theorem3_example(10).unwrap())));
    group.finish();
}

criterion_group!(benches, arithmetic, pipelines);
criterion_main!(benches);
