use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use wittlab_bench::{dyadic_form, wedge_form, wild_sum};
use wittlab_core::{canonical_decomposition, enumerate_wq_q2, wildness_index, Field};

fn wildness(c: &mut Criterion) {
    let mut g = c.benchmark_group("wildness_index");
    for n in [1, 2, 4, 6] {
        let q = wild_sum(n);
        g.bench_with_input(BenchmarkId::new("f2_laurent", n), &q, |b, q| b.iter(|| wildness_index(black_box(q)).unwrap()));
    }
    let q = wedge_form();
    g.bench_function("f2x_laurent", |b| b.iter(|| wildness_index(black_box(&q)).unwrap()));
    let q = dyadic_form();
    g.bench_function("q2", |b| b.iter(|| wildness_index(black_box(&q)).unwrap()));
    g.finish();
}

fn canonical(c: &mut Criterion) {
    let mut g = c.benchmark_group("canonical");
    for n in [2, 4] {
        let q = wild_sum(n);
        g.bench_with_input(BenchmarkId::new("f2_laurent", n), &q, |b, q| b.iter(|| canonical_decomposition(black_box(q)).unwrap()));
    }
    let q = dyadic_form();
    g.bench_function("q2", |b| b.iter(|| canonical_decomposition(black_box(&q)).unwrap()));
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_q2");
    g.sample_size(10);
    g.bench_function("table", |b| b.iter(|| enumerate_wq_q2(Field::dyadic()).unwrap()));
    g.finish();
}

criterion_group!(benches, wildness, canonical, enumeration);
criterion_main!(benches);
