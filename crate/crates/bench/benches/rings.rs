use criterion::{criterion_group, criterion_main, Criterion};
use dualring_core::catalog::rings::{grassmannian, lagrangian};
use dualring_core::{decide_nonvanishing, FamilyParams, Limits};

fn build_rings(c: &mut Criterion) {
    let limits = Limits::default();
    c.bench_function("lagrangian_6", |b| b.iter(|| lagrangian(6, "sigma", &limits).unwrap()));
    c.bench_function("grassmannian_4_8", |b| b.iter(|| grassmannian(4, 4, "sigma", "tau", &limits).unwrap()));
}

fn decide(c: &mut Criterion) {
    let limits = Limits::default();
    c.bench_function("decide_sl_imag_sp_5", |b| {
        b.iter(|| {
            let inst = FamilyParams::SlImagSp { n: 5 }.build(&limits).unwrap();
            decide_nonvanishing(&inst).unwrap()
        })
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = build_rings, decide
}
criterion_main!(benches);
