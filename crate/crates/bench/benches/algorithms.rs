use std::sync::Arc;

use amitsur::amitsur::{amitsur_groups, beta, builtin_presentation, bundled_dp2, dp2_verify, gm};
use amitsur::cohom::CohGroup;
use amitsur::formats::bundled_m16_resolution;
use amitsur::intlat::smith_normal_form;
use amitsur::GModule;
use amitsur_bench::{dense_matrix, CYCLIC_EXAMPLES};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn snf(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith_normal_form");
    for n in [8, 16, 32] {
        let a = dense_matrix(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| smith_normal_form(a)));
    }
    g.finish();
}

fn m16(c: &mut Criterion) {
    let base = bundled_m16_resolution().unwrap();
    c.bench_function("m16_extend_to_7", |b| b.iter(|| base.extend(7).unwrap()));
    let res = Arc::new(base.extend(7).unwrap());
    let z = Arc::new(GModule::trivial_z(res.group()));
    c.bench_function("m16_h6_trivial_z", |b| b.iter(|| CohGroup::new(&res, &z, 6).unwrap().invariants()));
}

fn amitsur_ladders(c: &mut Criterion) {
    let (p, model) = builtin_presentation("klein-p1").unwrap();
    let t = gm(&p.group);
    c.bench_function("klein_p1_degrees_2_to_8", |b| {
        b.iter(|| amitsur_groups(&p, &t, &model, &[2, 3, 4, 5, 6, 7, 8]).unwrap())
    });
    let mut g = c.benchmark_group("cyclic_degrees_2_to_8");
    for name in CYCLIC_EXAMPLES {
        let (p, model) = builtin_presentation(name).unwrap();
        let t = gm(&p.group);
        let degrees: Vec<usize> = (2..=8).collect();
        g.bench_function(name, |b| b.iter(|| amitsur_groups(&p, &t, &model, &degrees).unwrap()));
    }
    g.finish();
    let (p, model) = builtin_presentation("toric-klein").unwrap();
    c.bench_function("toric_klein_beta", |b| b.iter(|| beta(&p, &model).unwrap()));
}

fn dp2(c: &mut Criterion) {
    let d = bundled_dp2().unwrap();
    let mut g = c.benchmark_group("dp2");
    g.sample_size(10);
    g.bench_function("verify", |b| b.iter(|| dp2_verify(&d).unwrap()));
    g.finish();
}

criterion_group!(benches, snf, m16, amitsur_ladders, dp2);
criterion_main!(benches);
