use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::ChannelPlan;
use crate::attention::TransformerModel;
use crate::logic::{accepts, Formula};
use crate::Word;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub string: String,
    pub expected: bool,
    pub got: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerifyReport {
    pub formula: String,
    pub exhaustive_len: usize,
    pub spot_len: usize,
    pub spot_count: usize,
    pub strings_checked: usize,
    pub accepted: usize,
    pub mismatches: Vec<Mismatch>,
    /// Head outputs outside `[0, 1/4] ∪ [3/4, 1]` (up to rounding slack);
    /// `None` when the model's layout does not follow `f`'s channel plan.
    pub margin_violations: Option<usize>,
    /// Model run failures, e.g. malformed models.
    pub errors: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.errors.is_empty() && self.margin_violations.unwrap_or(0) == 0
    }
}

/// Compares the model against direct evaluation of `f` on every string of
/// length ≤ `exhaustive_len` and on `spot_count` random strings of length
/// `spot_len`. Strings are checked in parallel; the report lists them in
/// generation order.
pub fn verify_compiled(
    model: &TransformerModel,
    f: &Formula,
    exhaustive_len: usize,
    spot_len: usize,
    spot_count: usize,
    seed: u64,
) -> VerifyReport {
    let alphabet = &model.alphabet;
    let mut words: Vec<Word> = alphabet.words_up_to(exhaustive_len).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..spot_count {
        words.push((0..spot_len).map(|_| rng.gen_range(0..alphabet.len())).collect());
    }
    let plan = ChannelPlan::new(f);
    let scratch: Option<Vec<Vec<usize>>> = (plan.width == model.d
        && model.layers.len() == f.operator_depth().max(1))
    .then(|| (1..=model.layers.len()).map(|t| plan.scratch_at(t)).collect());
    // Summing n softmax terms drifts by up to about n ulp.
    let ulp = model.format.ulp(1.0);

    let outcomes: Vec<Result<(bool, bool, usize), String>> = words
        .par_iter()
        .map(|w| {
            let fwd = model.forward(w, &model.format).map_err(|e| e.to_string())?;
            let mut bad = 0;
            let slack = ulp * (w.len() + 1).max(64) as f64;
            if let Some(scratch) = &scratch {
                for (trace, chans) in fwd.layers.iter().zip(scratch) {
                    for &c in chans {
                        for &v in trace.after_attention.row(c) {
                            let ok = (-slack..=0.25).contains(&v) || (0.75..=1.0 + slack).contains(&v);
                            bad += usize::from(!ok);
                        }
                    }
                }
            }
            Ok((accepts(f, alphabet, w), fwd.accepted, bad))
        })
        .collect();

    let mut report = VerifyReport {
        formula: f.to_string(),
        exhaustive_len,
        spot_len,
        spot_count,
        strings_checked: words.len(),
        margin_violations: scratch.as_ref().map(|_| 0),
        ..VerifyReport::default()
    };
    for (w, out) in words.iter().zip(outcomes) {
        match out {
            Ok((expected, got, bad)) => {
                report.accepted += usize::from(got);
                if let Some(v) = report.margin_violations.as_mut() {
                    *v += bad;
                }
                if expected != got {
                    report.mismatches.push(Mismatch {
                        string: alphabet.format_word(w),
                        expected,
                        got,
                    });
                }
            }
            Err(e) => report.errors.push(format!("{}: {e}", alphabet.format_word(w))),
        }
    }
    report
}
