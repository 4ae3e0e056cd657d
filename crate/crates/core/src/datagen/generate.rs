use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::BenchmarkLanguage;
use crate::automata::SliceSampler;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub s: String,
    pub label: u8,
    pub len: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Balance {
    /// Strings drawn uniformly from `Σⁿ`.
    Uniform,
    /// Half drawn uniformly from the language slice, half from its complement.
    Balanced,
}

impl FromStr for Balance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Balance::Uniform),
            "balanced" => Ok(Balance::Balanced),
            other => Err(Error::InvalidParameter(format!("unknown balance mode `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Split {
    pub records: Vec<DatasetRecord>,
    /// Lengths that had to fall back to uniform sampling.
    pub warnings: Vec<String>,
}

/// Samples `per_length` labeled strings at each length.
///
/// Each length uses its own generator seeded with `seed ^ n`, so the output
/// does not depend on how lengths are scheduled across threads. In balanced
/// mode an odd `per_length` gives the extra string to the negatives.
pub fn generate_split(
    lang: &BenchmarkLanguage,
    lengths: &[usize],
    per_length: usize,
    balance: Balance,
    seed: u64,
) -> Result<Split> {
    if balance == Balance::Balanced && per_length < 2 {
        return Err(Error::InvalidParameter(
            "balanced splits need at least 2 strings per length".into(),
        ));
    }
    let complement = lang.dfa.complement();
    let parts = lengths
        .par_iter()
        .map(|&n| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
            let mut warning = None;
            let mut words = Vec::with_capacity(per_length);
            match balance {
                Balance::Uniform => uniform(lang, n, per_length, &mut rng, &mut words),
                Balance::Balanced => {
                    let pos = SliceSampler::new(&lang.dfa, n);
                    let neg = SliceSampler::new(&complement, n);
                    if pos.is_empty() || neg.is_empty() {
                        let side = if pos.is_empty() { "positive" } else { "negative" };
                        warning = Some(format!(
                            "length {n}: no {side} strings; sampled uniformly from Σ^{n}"
                        ));
                        uniform(lang, n, per_length, &mut rng, &mut words);
                    } else {
                        let half = per_length / 2;
                        for _ in 0..half {
                            words.push(pos.sample(&mut rng)?);
                        }
                        for _ in half..per_length {
                            words.push(neg.sample(&mut rng)?);
                        }
                    }
                }
            }
            let mut records: Vec<DatasetRecord> = words
                .into_iter()
                .map(|w| DatasetRecord {
                    label: u8::from(lang.dfa.accepts(&w)),
                    s: lang.alphabet.format_word(&w),
                    len: n,
                })
                .collect();
            records.shuffle(&mut rng);
            Ok((records, warning))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut split = Split::default();
    for (records, warning) in parts {
        split.records.extend(records);
        split.warnings.extend(warning);
    }
    Ok(split)
}

fn uniform(lang: &BenchmarkLanguage, n: usize, count: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<usize>>) {
    let k = lang.alphabet.len();
    for _ in 0..count {
        out.push((0..n).map(|_| rng.gen_range(0..k)).collect());
    }
}
