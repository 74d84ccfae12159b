use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use filippov_bench::composable_pair;
use filippov_core::{compose_homomorphisms, horizontal_compose, Matrix, TwoHomomorphism};

fn homomorphisms(c: &mut Criterion) {
    let (first, second) = composable_pair(1);
    c.bench_function("compose_homomorphisms", |b| {
        b.iter(|| compose_homomorphisms(black_box(&second), black_box(&first)).unwrap())
    });
    let both = compose_homomorphisms(&second, &first).unwrap();
    c.bench_function("verify_homomorphism/composite", |b| b.iter(|| black_box(&both).verify().unwrap()));
}

fn two_homomorphisms(c: &mut Criterion) {
    let (first, second) = composable_pair(2);
    let twist = |phi: &filippov_core::Homomorphism| {
        let tau = Matrix::identity(3);
        TwoHomomorphism::from_twist(Arc::new(phi.clone()), tau).unwrap()
    };
    let (inner, outer) = (twist(&first), twist(&second));
    c.bench_function("horizontal_compose", |b| {
        b.iter(|| horizontal_compose(black_box(&outer), black_box(&inner)).unwrap())
    });
}

criterion_group!(benches, homomorphisms, two_homomorphisms);
criterion_main!(benches);
