use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use lctkit::charp::nu_poly;
use lctkit::degeneration::degeneration_order;
use lctkit::multiplicities::mixed_multiplicities;
use lctkit::thresholds::{lct_monomial, nu_monomial};
use lctkit::MonomialIdeal;
use lctkit_bench::{binomial, degeneration_input, pure, staircase, three_variable};

fn thresholds(c: &mut Criterion) {
    let ideals = [("staircase", staircase()), ("three_variable", three_variable())];
    for (name, ideal) in &ideals {
        c.bench_function(&format!("lct/{name}"), |b| b.iter(|| lct_monomial(black_box(ideal)).unwrap()));
    }
    let max = MonomialIdeal::maximal(2);
    let ideal = staircase();
    c.bench_function("nu_monomial/staircase_q25", |b| {
        b.iter(|| nu_monomial(black_box(&ideal), &max, 25, 1 << 22).unwrap())
    });
}

fn multiplicities(c: &mut Criterion) {
    let ideal = three_variable();
    c.bench_function("mixed/three_variable", |b| b.iter(|| mixed_multiplicities(black_box(&ideal)).unwrap()));
    let ideal = pure(&[3, 4, 5]);
    c.bench_function("mixed/pure_345", |b| b.iter(|| mixed_multiplicities(black_box(&ideal)).unwrap()));
}

fn polynomial_nu(c: &mut Criterion) {
    let f = binomial(5, 2, 3);
    let max = MonomialIdeal::maximal(2);
    c.bench_function("nu_poly/cusp_p5_e2", |b| {
        b.iter(|| nu_poly(black_box(std::slice::from_ref(&f)), &max, 5, 2, 1 << 20).unwrap())
    });
}

fn degeneration(c: &mut Criterion) {
    let input = degeneration_input();
    c.bench_function("degeneration/four_classes", |b| b.iter(|| degeneration_order(black_box(&input)).unwrap()));
}

criterion_group!(benches, thresholds, multiplicities, polynomial_nu, degeneration);
criterion_main!(benches);
