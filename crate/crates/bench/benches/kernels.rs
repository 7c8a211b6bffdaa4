use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use supclass_core::groupring::{class_sum, convolve};
use supclass_core::schemes::{build_scheme, SchemeVariant};
use supclass_core::scring::sc_mul;
use supclass_core::{GroupKind, MatrixGroup, SupportClass, SupportVector};

fn convolution(c: &mut Criterion) {
    let g = MatrixGroup::new(GroupKind::Sl2, 7).unwrap();
    let x = class_sum(&g, SupportClass::C).unwrap();
    let y = class_sum(&g, SupportClass::DPlus).unwrap();
    c.bench_function("convolve C*D+ in Z[SL2(7)]", |b| {
        b.iter(|| convolve(black_box(&x), black_box(&y)).unwrap())
    });
}

fn support_ring(c: &mut Criterion) {
    let u = SupportVector::basis(SupportClass::C).add(&SupportVector::basis(SupportClass::EMinus));
    let v = SupportVector::basis(SupportClass::DPlus).add(&SupportVector::basis(SupportClass::B));
    c.bench_function("sc_mul at q=9", |b| {
        b.iter(|| sc_mul(black_box(&u), black_box(&v), 9).unwrap())
    });
}

fn scheme(c: &mut Criterion) {
    c.bench_function("build d5 scheme at q=5", |b| {
        b.iter(|| build_scheme(black_box(5), SchemeVariant::D5).unwrap())
    });
}

criterion_group!(benches, convolution, support_ring, scheme);
criterion_main!(benches);
