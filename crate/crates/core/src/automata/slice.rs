use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Dfa;
use crate::{Error, Result, Word};

/// `|L(d) ∩ Σ^n|`, exactly.
pub fn count_slice(d: &Dfa, n: usize) -> BigUint {
    let mut counts = vec![BigUint::zero(); d.num_states()];
    counts[d.init()] = BigUint::one();
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); d.num_states()];
        for (q, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for a in 0..d.alphabet().len() {
                next[d.step(q, a)] += c;
            }
        }
        counts = next;
    }
    d.final_states().map(|q| &counts[q]).sum()
}

/// Uniform sampler over `L(d) ∩ Σ^n`.
///
/// `ways[r][q]` counts accepted completions of length `r` from `q`; a draw
/// walks forward from the initial state choosing each symbol with
/// probability proportional to the completions it leaves.
pub struct SliceSampler<'d> {
    dfa: &'d Dfa,
    ways: Vec<Vec<BigUint>>,
}

impl<'d> SliceSampler<'d> {
    pub fn new(dfa: &'d Dfa, n: usize) -> Self {
        let mut ways = Vec::with_capacity(n + 1);
        ways.push(
            (0..dfa.num_states())
                .map(|q| if dfa.is_final(q) { BigUint::one() } else { BigUint::zero() })
                .collect::<Vec<_>>(),
        );
        for r in 1..=n {
            let prev: &Vec<BigUint> = &ways[r - 1];
            let row = (0..dfa.num_states())
                .map(|q| (0..dfa.alphabet().len()).map(|a| &prev[dfa.step(q, a)]).sum())
                .collect();
            ways.push(row);
        }
        Self { dfa, ways }
    }

    pub fn len(&self) -> usize {
        self.ways.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.count().is_zero()
    }

    pub fn count(&self) -> &BigUint {
        &self.ways[self.len()][self.dfa.init()]
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Word> {
        let n = self.len();
        if self.is_empty() {
            return Err(Error::EmptySlice(n));
        }
        let mut q = self.dfa.init();
        let mut word = Vec::with_capacity(n);
        for r in (1..=n).rev() {
            let mut pick = rng.gen_biguint_below(&self.ways[r][q]);
            let mut chosen = None;
            for a in 0..self.dfa.alphabet().len() {
                let w = &self.ways[r - 1][self.dfa.step(q, a)];
                if pick < *w {
                    chosen = Some(a);
                    break;
                }
                pick -= w;
            }
            let a = chosen.expect("pick is below the total");
            word.push(a);
            q = self.dfa.step(q, a);
        }
        Ok(word)
    }
}

/// One uniform draw from `L(d) ∩ Σ^n`, determined by `seed`.
pub fn sample_slice(d: &Dfa, n: usize, seed: u64) -> Result<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SliceSampler::new(d, n).sample(&mut rng)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::random::random_dfa;
    use super::*;
    use proptest::prelude::*;

    fn brute(d: &Dfa, n: usize) -> BigUint {
        BigUint::from(d.alphabet().words_of_len(n).filter(|w| d.accepts(w)).count())
    }

    #[test]
    fn counts_match_examples() {
        assert_eq!(count_slice(&ends_a(), 3), BigUint::from(4u32));
        assert_eq!(count_slice(&alt_ab(), 4), BigUint::from(1u32));
        assert_eq!(count_slice(&alt_ab(), 3), BigUint::zero());
        assert_eq!(count_slice(&alt_ab(), 0), BigUint::one());
        assert_eq!(count_slice(&ends_a(), 0), BigUint::zero());
    }

    #[test]
    fn counts_are_exact_for_long_slices() {
        // Σ*a over {a,b}: 2^(n-1)
        let want = BigUint::one() << 499usize;
        assert_eq!(count_slice(&ends_a(), 500), want);
        assert_eq!(SliceSampler::new(&ends_a(), 500).count(), &want);
    }

    #[test]
    fn unique_member_and_empty_slice() {
        for seed in 0..5 {
            assert_eq!(sample_slice(&alt_ab(), 4, seed).unwrap(), vec![0, 1, 0, 1]);
        }
        assert!(matches!(sample_slice(&alt_ab(), 3, 0), Err(Error::EmptySlice(3))));
    }

    #[test]
    fn two_member_slice_is_balanced() {
        let d = ends_a();
        let sampler = SliceSampler::new(&d, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut aa = 0;
        for _ in 0..4000 {
            let w = sampler.sample(&mut rng).unwrap();
            assert!(w == vec![0, 0] || w == vec![1, 0]);
            aa += usize::from(w == vec![0, 0]);
        }
        // 4000 fair coin flips: 6 sigma is about 190
        assert!((aa as i64 - 2000).abs() < 190, "{aa}");
    }

    #[test]
    fn deterministic_given_seed() {
        let d = dyck2();
        assert_eq!(sample_slice(&d, 12, 9).unwrap(), sample_slice(&d, 12, 9).unwrap());
    }

    proptest! {
        #[test]
        fn count_matches_enumeration(seed in any::<u64>(), n in 0usize..=10) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = random_dfa(&mut rng, 5, 2);
            prop_assert_eq!(count_slice(&d, n), brute(&d, n));
            let sampler = SliceSampler::new(&d, n);
            if !sampler.is_empty() {
                let w = sampler.sample(&mut rng).unwrap();
                prop_assert_eq!(w.len(), n);
                prop_assert!(d.accepts(&w));
            }
        }
    }
}
