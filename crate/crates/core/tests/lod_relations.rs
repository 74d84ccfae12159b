use filippov_core::corpus::{example_crossed_module, single_entry_perturbations, two_term_corpus};
use filippov_core::{build_strict_from_crossed_module, find_lod_violation, verify_lod_relations, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn every_corpus_algebra_satisfies_the_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, l) in two_term_corpus(&mut rng) {
        let r = verify_lod_relations(&l, 4).unwrap();
        assert!(r.passed(), "{name}: {r}");
        assert!(r.checked.contains_key("lod_n4"), "{name}");
    }
}

#[test]
fn breaking_perturbations_violate_a_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let corpus = two_term_corpus(&mut rng);
    let picked = ["strict_example", "skeletal_adjoint", "transport0"];
    let mut coherence_only = 0;
    for (name, l) in corpus.iter().filter(|(n, _)| picked.contains(&n.as_str())) {
        for (what, p) in single_entry_perturbations(l) {
            let axioms = p.verify_two_term();
            if axioms.passed() {
                continue;
            }
            let low = find_lod_violation(&p, 3).unwrap();
            if low.passed() {
                // Only the arity-4 relation sees a broken coherence condition.
                assert_eq!(axioms.failed_conditions(), vec!["coherence".to_string()], "{name} {what}");
                coherence_only += 1;
                assert!(!find_lod_violation(&p, 4).unwrap().passed(), "{name} {what}");
            }
        }
    }
    assert!(coherence_only > 0);
}

#[test]
fn gated_check_refuses_a_broken_algebra() {
    let l = build_strict_from_crossed_module(&example_crossed_module()).unwrap();
    let (_, broken) = single_entry_perturbations(&l)
        .into_iter()
        .find(|(_, p)| !p.verify_two_term().passed())
        .unwrap();
    assert!(matches!(verify_lod_relations(&broken, 3), Err(Error::PreconditionFailed { .. })));
}
