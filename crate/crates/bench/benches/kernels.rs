use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

use ibd_core::exact::qi;
use ibd_core::expr::{parse, HeavisideConvention};
use ibd_core::ibd::{laplace_limit_eval, ramanujan_heaviside, simplex_laplace, RamanujanParams};
use ibd_core::kernels::Domain;
use ibd_core::oracle::{mc_simplex, quad_1d, quad_oscillatory};
use ibd_core::qcalc::{kurokawa_check, QContext};

fn limit_rule(c: &mut Criterion) {
    let sinc = parse("sin(x)/x").unwrap();
    let exppoly = parse("x^3*exp(-2*x) + 3*x*exp(-x/2)").unwrap();
    c.bench_function("limit rule sinc", |b| {
        b.iter(|| laplace_limit_eval(black_box(&sinc), "x", &Domain::SemiInfinite).unwrap())
    });
    c.bench_function("limit rule exp-poly", |b| {
        b.iter(|| laplace_limit_eval(black_box(&exppoly), "x", &Domain::SemiInfinite).unwrap())
    });
}

fn ramanujan(c: &mut Criterion) {
    c.bench_function("ramanujan n=12 sweep", |b| {
        b.iter(|| {
            for p in -14..=14 {
                black_box(ramanujan_heaviside(&RamanujanParams::new(12, qi(p)), HeavisideConvention::RightContinuous));
            }
        })
    });
}

fn simplex(c: &mut Criterion) {
    let a: Vec<Complex64> = (1..=6).map(|k| Complex64::new(k as f64 * 0.7, 0.0)).collect();
    c.bench_function("simplex closed form n=6", |b| b.iter(|| simplex_laplace(black_box(&a)).unwrap()));
    let degenerate = vec![Complex64::new(1.0, 0.0); 4];
    c.bench_function("simplex degenerate n=4", |b| b.iter(|| simplex_laplace(black_box(&degenerate)).unwrap()));
    c.bench_function("mc simplex 1e4", |b| {
        b.iter(|| mc_simplex(|x: &[f64]| (-x.iter().sum::<f64>()).exp(), 3, 10_000, black_box(7)))
    });
}

fn oracles(c: &mut Criterion) {
    c.bench_function("quad_1d gaussian tail", |b| {
        b.iter(|| quad_1d(|x| (-x * x).exp(), 0.0, f64::INFINITY, black_box(1e-12)))
    });
    c.bench_function("quad_oscillatory sinc", |b| {
        b.iter(|| {
            quad_oscillatory(
                |x| if x == 0.0 { 1.0 } else { x.sin() / x },
                std::f64::consts::PI,
                std::f64::consts::PI,
                black_box(1e-10),
            )
        })
    });
    let ctx = QContext::new(0.5).unwrap();
    c.bench_function("kurokawa s=2", |b| b.iter(|| kurokawa_check(black_box(2.0), &ctx).unwrap()));
}

criterion_group!(benches, limit_rule, ramanujan, simplex, oracles);
criterion_main!(benches);
