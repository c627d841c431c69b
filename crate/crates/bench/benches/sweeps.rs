use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ntc_core::brieskorn::{self, BrieskornType};
use ntc_core::homogeneous;

fn brieskorn_sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("brieskorn");
    group.sample_size(10);
    group.bench_function("corollary_suite/15", |b| {
        b.iter(|| brieskorn::corollary_suite(black_box(15)))
    });
    let t = BrieskornType::new(7, 23, 29).expect("ordered");
    group.bench_function("analyze/(7,23,29)", |b| {
        b.iter(|| brieskorn::analyze(black_box(t)))
    });
    group.finish();
}

fn homogeneous_search(c: &mut Criterion) {
    for d in [5, 8] {
        c.bench_function(&format!("homog_classify/{d}"), |b| {
            b.iter(|| homogeneous::classify(black_box(d)))
        });
    }
}

criterion_group!(benches, brieskorn_sweeps, homogeneous_search);
criterion_main!(benches);
