use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tal_core::algebra::{is_aperiodic, is_definite, is_locally_r_trivial, transition_semigroup};
use tal_core::automata::random::random_dfa;
use tal_core::automata::{minimize, Dfa};

fn dfa(seed: u64) -> Dfa {
    minimize(&random_dfa(&mut ChaCha8Rng::seed_from_u64(seed), 5, 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplication_is_associative_and_matches_witnesses(seed in any::<u64>()) {
        let d = dfa(seed);
        let s = transition_semigroup(&d).unwrap();
        let n = s.len();
        for x in 0..n {
            // The witness word of each element induces exactly that element.
            let w = s.witness(x);
            for q in 0..d.num_states() {
                prop_assert_eq!(s.element(x).apply(q), d.walk(q, w));
            }
            for y in 0..n.min(6) {
                for z in 0..n.min(6) {
                    prop_assert_eq!(s.mul(s.mul(x, y), z), s.mul(x, s.mul(y, z)));
                }
            }
        }
    }

    #[test]
    fn fragments_are_nested(seed in any::<u64>()) {
        let d = dfa(seed);
        let s = transition_semigroup(&d).unwrap();
        let definite = is_definite(&d, 1_000_000).unwrap().holds();
        let lrt = is_locally_r_trivial(&s).holds();
        let aperiodic = is_aperiodic(&s).holds();
        prop_assert!(!definite || lrt);
        prop_assert!(!lrt || aperiodic);
    }

    #[test]
    fn idempotents_square_to_themselves(seed in any::<u64>()) {
        let s = transition_semigroup(&dfa(seed)).unwrap();
        let idem = s.idempotents();
        prop_assert!(!idem.is_empty());
        for e in 0..s.len() {
            prop_assert_eq!(idem.contains(&e), s.mul(e, e) == e);
        }
    }
}
