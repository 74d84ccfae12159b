//! Inputs shared by the benchmarks in `benches/`.

use std::sync::Arc;

use filippov_core::corpus::{example_crossed_module, random_invertible, random_phi2, transport_two_term};
use filippov_core::{build_strict_from_crossed_module, Homomorphism, ThreeLie2Algebra};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The strict algebra of the standard crossed module on `ℚ³`.
pub fn strict_example() -> ThreeLie2Algebra {
    build_strict_from_crossed_module(&example_crossed_module()).expect("valid crossed module")
}

/// Two composable homomorphisms out of [`strict_example`], each a random
/// transport, from a fixed seed.
pub fn composable_pair(seed: u64) -> (Homomorphism, Homomorphism) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = strict_example();
    let step = |l: &ThreeLie2Algebra, rng: &mut ChaCha8Rng| -> (Arc<ThreeLie2Algebra>, Homomorphism) {
        let phi0 = random_invertible(l.dim0(), rng);
        let phi1 = random_invertible(l.dim1(), rng);
        let phi2 = random_phi2(l.dim0(), l.dim1(), rng);
        transport_two_term(l, &phi0, &phi1, &phi2).expect("invertible maps")
    };
    let (mid, first) = step(&l, &mut rng);
    let (_, second) = step(&mid, &mut rng);
    (first, second)
}
