use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polyzero::complexroots::all_roots;
use polyzero::families::{make_d, make_h, make_i};
use polyzero::realroots::default_tolerance;
use polyzero::RootIsolator;

fn sturm(c: &mut Criterion) {
    let mut g = c.benchmark_group("sturm_chain");
    for k in [20u32, 40, 60] {
        let p = make_i(k).unwrap();
        g.bench_with_input(BenchmarkId::new("I_k", k), &p, |b, p| b.iter(|| RootIsolator::new(black_box(p)).unwrap()));
    }
    g.finish();
}

fn isolate_refine(c: &mut Criterion) {
    let tol = default_tolerance();
    let mut g = c.benchmark_group("isolate_and_refine");
    for k in [10u32, 20, 40] {
        let iso = RootIsolator::new(&make_h(k, 1).unwrap()).unwrap();
        g.bench_with_input(BenchmarkId::new("H_k l=1", k), &iso, |b, iso| {
            b.iter(|| iso.all_roots(black_box(&tol), None).unwrap())
        });
    }
    g.finish();
}

fn aberth(c: &mut Criterion) {
    let mut g = c.benchmark_group("aberth");
    for j in [10u32, 20, 30] {
        let p = make_d(j, 2).unwrap();
        g.bench_with_input(BenchmarkId::new("D_j l=2", j), &p, |b, p| b.iter(|| all_roots(black_box(p), 5000, 1e-10).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, sturm, isolate_refine, aberth);
criterion_main!(benches);
