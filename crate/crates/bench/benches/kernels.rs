use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use skelgb_bench::{component_ideals, skeleton_generators, skeleton_ideal, squares_ideal};
use skelgb_core::dodeca::cover_search;
use skelgb_core::groebner::{buchberger, hf_values, intersect_all, is_groebner};
use skelgb_core::invariants::betti_table;
use skelgb_core::{Family, GroebnerConfig, MonomialOrder};

fn groebner(c: &mut Criterion) {
    let gens = skeleton_generators(4, 1);
    let order = gens[0].ring().canonical_order().clone();
    c.bench_function("buchberger skeleton n=4 p=1", |b| b.iter(|| buchberger(black_box(&gens), &order)));
    let lex = MonomialOrder::lex(5).with_least(0);
    c.bench_function("criterion check skeleton n=4 p=2 lex", |b| {
        let gens = skeleton_generators(4, 2);
        b.iter(|| is_groebner(black_box(&gens), &lex))
    });
}

fn intersection(c: &mut Criterion) {
    let ideals = component_ideals(Family::KL, 4, 2, 2);
    let cfg = GroebnerConfig::default();
    c.bench_function("fold KL n=4 p=2 m=2 components", |b| b.iter(|| intersect_all(black_box(&ideals), &cfg)));
}

fn hilbert(c: &mut Criterion) {
    c.bench_function("hilbert function squares n=4 p=1", |b| {
        b.iter(|| {
            let ideal = squares_ideal(4, 1);
            hf_values(&ideal, ideal.ring().canonical_order(), 10)
        })
    });
}

fn betti(c: &mut Criterion) {
    let mut group = c.benchmark_group("betti");
    group.sample_size(10);
    group.bench_function("skeleton n=3 p=1", |b| b.iter(|| betti_table(&skeleton_ideal(3, 1), 8)));
    group.finish();
}

fn covers(c: &mut Criterion) {
    c.bench_function("dodecahedron 9-covers", |b| b.iter(|| cover_search(black_box(9))));
}

criterion_group!(benches, groebner, intersection, hilbert, betti, covers);
criterion_main!(benches);
