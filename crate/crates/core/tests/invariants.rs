use std::sync::Arc;

use filippov_core::corpus::{
    algebra_corpus, base_crossed_modules, random_invertible, random_phi2, random_skeletal_quadruple,
    transport_crossed_module, transport_two_term,
};
use filippov_core::{
    build_skeletal, build_strict_from_crossed_module, compose_homomorphisms, delta_squared_zero, extract_crossed_module,
    extract_quadruple, horizontal_compose, identity_homomorphism, numbered_labels, vertical_compose, Matrix,
    Representation, Scalar, ThreeLie2Algebra, TwoHomomorphism,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    let entries = (0..rows * cols).map(|_| Scalar::from_int(rng.random_range(-2..=2))).collect();
    Matrix::from_entries(rows, cols, entries).unwrap()
}

fn strict_base(which: usize) -> ThreeLie2Algebra {
    let bases = base_crossed_modules();
    let (_, cm) = &bases[which % bases.len()];
    build_strict_from_crossed_module(cm).unwrap()
}

fn transported(l: &ThreeLie2Algebra, rng: &mut impl Rng) -> (Arc<ThreeLie2Algebra>, filippov_core::Homomorphism) {
    let phi0 = random_invertible(l.dim0(), rng);
    let phi1 = random_invertible(l.dim1(), rng);
    let phi2 = random_phi2(l.dim0(), l.dim1(), rng);
    transport_two_term(l, &phi0, &phi1, &phi2).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn delta_squared_vanishes_on_the_corpus(seed in any::<u64>(), which in 0usize..9, degree in 1usize..=2) {
        let (name, a) = algebra_corpus().swap_remove(which);
        if a.check_fundamental_identity().passed() {
            for rep in [Representation::zero(a.dim(), 2), Representation::adjoint(&a)] {
                let r = delta_squared_zero(&a, &rep, degree, 3, seed).unwrap();
                prop_assert!(r.passed(), "{}: {}", name, r);
            }
        }
    }

    #[test]
    fn crossed_modules_survive_the_round_trip(seed in any::<u64>(), which in 0usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, base) = base_crossed_modules().swap_remove(which);
        let p = random_invertible(base.g.dim(), &mut rng);
        let q = random_invertible(base.h.dim(), &mut rng);
        let cm = transport_crossed_module(&base, &p, &q).unwrap();
        prop_assert!(cm.verify().unwrap().passed());
        let l = build_strict_from_crossed_module(&cm).unwrap();
        prop_assert!(l.verify_two_term().passed());
        prop_assert_eq!(extract_crossed_module(&l).unwrap(), cm);
    }

    #[test]
    fn quadruples_survive_the_round_trip(seed in any::<u64>(), which in 0usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, a) = algebra_corpus().swap_remove(which);
        if a.check_fundamental_identity().passed() {
            let rep = Representation::adjoint(&a);
            let q = random_skeletal_quadruple(&a, rep, a.labels().iter().map(|s| format!("{s}*")).collect(), &mut rng)
                .unwrap();
            let l = build_skeletal(&q).unwrap();
            prop_assert!(l.verify_two_term().passed());
            prop_assert_eq!(extract_quadruple(&l).unwrap(), q);
        }
    }

    #[test]
    fn composites_of_homomorphisms_verify(seed in any::<u64>(), which in 0usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = strict_base(which);
        let (mid, first) = transported(&l, &mut rng);
        let (_, second) = transported(&mid, &mut rng);
        let both = compose_homomorphisms(&second, &first).unwrap();
        prop_assert!(both.verify().unwrap().passed());
        let id = identity_homomorphism(mid.clone());
        prop_assert_eq!(compose_homomorphisms(&id, &first).unwrap(), first.clone());
    }

    #[test]
    fn composites_of_two_homomorphisms_verify(seed in any::<u64>(), which in 0usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = strict_base(which);
        let (mid, first) = transported(&l, &mut rng);
        let (end, second) = transported(&mid, &mut rng);
        let twist = |phi: &filippov_core::Homomorphism, rng: &mut ChaCha8Rng| {
            let tau = small_matrix(phi.target().dim1(), phi.source().dim0(), rng);
            TwoHomomorphism::from_twist(Arc::new(phi.clone()), tau).unwrap()
        };
        let inner = twist(&first, &mut rng);
        prop_assert!(inner.verify().unwrap().passed());
        let later = twist(inner.target(), &mut rng);
        let stacked = vertical_compose(&inner, &later).unwrap();
        prop_assert!(stacked.verify().unwrap().passed());
        prop_assert_eq!(stacked.target(), later.target());
        let outer = twist(&second, &mut rng);
        let side = horizontal_compose(&outer, &inner).unwrap();
        prop_assert!(side.verify().unwrap().passed());
        prop_assert_eq!(side.source().target(), &end);
    }
}

#[test]
fn labels_are_numbered_from_one() {
    assert_eq!(numbered_labels("x", 2), vec!["x1".to_string(), "x2".to_string()]);
}
