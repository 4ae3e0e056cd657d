use std::collections::HashMap;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::{check, Check, SuiteOptions};
use crate::automata::{count_slice, ltl_to_dfa, SliceSampler};
use crate::datagen::benchmarks;
use crate::logic::parse_formula;
use crate::{Alphabet, Result};

pub(crate) fn sampler(opts: &SuiteOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for lang in benchmarks() {
        let mut bad = Vec::new();
        for n in 0..=10 {
            let brute = lang.alphabet.words_of_len(n).filter(|w| lang.dfa.accepts(w)).count();
            if count_slice(&lang.dfa, n) != BigUint::from(brute) {
                bad.push(n);
            }
        }
        checks.push(check(
            format!("slice counts of {}", lang.id),
            bad.is_empty(),
            format!("n <= 10, mismatching lengths {bad:?}"),
        ));
    }

    let ab = Alphabet::from_chars("ab")?;
    let d = ltl_to_dfa(&parse_formula("P (b & Y a)", &ab)?, &ab)?;
    let n = 5;
    let slice: Vec<Vec<usize>> = ab.words_of_len(n).filter(|w| d.accepts(w)).collect();
    let sampler = SliceSampler::new(&d, n);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let draws = opts.trials.unwrap_or(10_000);
    let mut freq: HashMap<Vec<usize>, usize> = HashMap::new();
    for _ in 0..draws {
        *freq.entry(sampler.sample(&mut rng)?).or_default() += 1;
    }
    let expected = draws as f64 / slice.len() as f64;
    let stat: f64 = slice
        .iter()
        .map(|w| {
            let o = freq.get(w).copied().unwrap_or(0) as f64;
            (o - expected).powi(2) / expected
        })
        .sum();
    let outside = freq.keys().filter(|w| !slice.contains(w)).count();
    let dof = (slice.len() - 1) as f64;
    let p = 1.0 - ChiSquared::new(dof).expect("positive dof").cdf(stat);
    checks.push(check(
        "uniform sampling over the length-5 slice of Σ*abΣ*",
        p > 0.01 && outside == 0,
        format!("{} members, {draws} draws, chi2 = {stat:.2} on {dof} dof, p = {p:.4}", slice.len()),
    ));
    Ok(checks)
}
