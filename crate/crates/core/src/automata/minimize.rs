use std::collections::HashMap;

use super::Dfa;

/// Minimal complete DFA for the same language, canonically numbered (BFS
/// from the initial state), so minimal DFAs of equal languages are equal.
///
/// Moore-style partition refinement on the reachable part.
pub fn minimize(d: &Dfa) -> Dfa {
    let d = d.canonical();
    let n = d.num_states();
    let mut block: Vec<usize> = (0..n).map(|q| usize::from(d.is_final(q))).collect();
    let mut blocks = block.iter().copied().collect::<std::collections::HashSet<_>>().len();
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let next: Vec<usize> = (0..n)
            .map(|q| {
                let sig = (block[q], d.delta[q].iter().map(|&t| block[t]).collect());
                let fresh = ids.len();
                *ids.entry(sig).or_insert(fresh)
            })
            .collect();
        let count = ids.len();
        block = next;
        if count == blocks {
            break;
        }
        blocks = count;
    }
    let mut rep = vec![usize::MAX; blocks];
    for q in 0..n {
        if rep[block[q]] == usize::MAX {
            rep[block[q]] = q;
        }
    }
    let delta = rep
        .iter()
        .map(|&q| d.delta[q].iter().map(|&t| block[t]).collect())
        .collect();
    let finals = rep.iter().map(|&q| d.finals[q]).collect();
    Dfa {
        alphabet: d.alphabet.clone(),
        delta,
        init: block[d.init],
        finals,
    }
    .canonical()
}

impl Dfa {
    /// True when no smaller DFA recognizes the same language.
    pub fn is_minimal(&self) -> bool {
        minimize(self).num_states() == self.num_states()
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::random::random_dfa;
    use super::super::{equivalent, Dfa};
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    #[test]
    fn bounded_dyck_is_already_minimal() {
        let m = minimize(&dyck2());
        assert_eq!(m.num_states(), 4);
        assert!(dyck2().is_minimal());
    }

    #[test]
    fn drops_unreachable_copy() {
        let d = alt_ab();
        let n = d.num_states();
        let mut delta = d.delta.clone();
        delta.extend(d.delta.iter().map(|row| row.iter().map(|t| t + n).collect::<Vec<_>>()));
        let finals: Vec<usize> = d.final_states().chain(d.final_states().map(|q| q + n)).collect();
        let doubled = Dfa::new(ab(), delta, 0, finals).unwrap();
        assert_eq!(minimize(&doubled), minimize(&d));
    }

    #[test]
    fn merges_equivalent_states() {
        // two accepting states that behave identically
        let d = Dfa::new(ab(), vec![vec![1, 2], vec![1, 2], vec![1, 2]], 0, [1, 2]).unwrap();
        let m = minimize(&d);
        assert_eq!(m.num_states(), 2);
        assert!(equivalent(&d, &m).unwrap().is_equal());
    }

    proptest! {
        #[test]
        fn minimization_laws(seed in any::<u64>()) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let d = random_dfa(&mut rng, 6, 3);
            let m = minimize(&d);
            prop_assert!(equivalent(&d, &m).unwrap().is_equal());
            prop_assert_eq!(minimize(&m), m.clone());
            prop_assert!(m.num_states() <= d.num_states());
            prop_assert_eq!(m.reachable().len(), m.num_states());
        }
    }
}
