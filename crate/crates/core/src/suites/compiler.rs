use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check, Check, SuiteOptions};
use crate::compiler::{compile, mask_census, verify_compiled, CompileParams};
use crate::datagen::benchmarks;
use crate::logic::random::{random_formula, OperatorSet};
use crate::logic::{locally_testable_formula, parse_formula, Formula, LocalKind};
use crate::{Alphabet, Result};

/// The compiled-model corpus: registry formulas without `S`, the basic
/// locally 2-testable formulas, hand-picked mixtures and `extra` random
/// `S`-free formulas of size at most 6.
pub fn compiler_formulas(seed: u64, extra: usize) -> Result<Vec<(Alphabet, Formula)>> {
    let ab = Alphabet::from_chars("ab").expect("valid alphabet");
    let mut out = Vec::new();
    for lang in benchmarks() {
        if let Some(f) = lang.formula {
            if !f.any(|g| matches!(g, Formula::Since(..))) {
                out.push((lang.alphabet, f));
            }
        }
    }
    for (kind, len) in [(LocalKind::Factor, 2), (LocalKind::Prefix, 1), (LocalKind::Suffix, 1)] {
        for u in ab.words_of_len(len) {
            let toks: Vec<&str> = u.iter().map(|&s| ab.token(s)).collect();
            out.push((ab.clone(), locally_testable_formula(kind, &toks, 2)?));
        }
    }
    for src in [
        "true",
        "false",
        "a",
        "!a & !b",
        "P a",
        "Y^2 a",
        "Y^4 a & P b",
        "Ystar (a & Y b)",
        "Y (Y a)",
        "!Y a | P (b & Y^3 a)",
        "P (P a & Y b)",
        "Y^3 (a & P b)",
    ] {
        out.push((ab.clone(), parse_formula(src, &ab)?));
    }
    let ops = OperatorSet {
        yesterday: true,
        within: vec![2, 3],
        star: true,
        past: true,
        ..OperatorSet::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..extra {
        out.push((ab.clone(), random_formula(&mut rng, &ab, &ops, 6)));
    }
    Ok(out)
}

/// Whether the head census follows the operators: `P`/`Ystar` exactly when
/// there are global heads, and local heads with exactly the `Y`/`Y^k` bounds.
pub(crate) fn census_matches(f: &Formula, global: usize, local: &[usize]) -> bool {
    let mut bounds = Vec::new();
    let mut has_global = false;
    f.walk(&mut |g| match g {
        Formula::Yesterday(_) => bounds.push(1),
        Formula::YesterdayWithin(k, _) => bounds.push(*k),
        Formula::Past(_) | Formula::YesterdayStar(_) => has_global = true,
        _ => {}
    });
    bounds.sort_unstable();
    bounds.dedup();
    let mut got = local.to_vec();
    got.sort_unstable();
    got.dedup();
    has_global == (global > 0) && bounds == got
}

pub(crate) fn compiler(opts: &SuiteOptions) -> Result<Vec<Check>> {
    let params = CompileParams::default();
    let corpus = compiler_formulas(opts.seed, opts.trials.unwrap_or(10))?;
    let mut checks = Vec::new();
    for (i, (alphabet, f)) in corpus.iter().enumerate() {
        let model = compile(f, alphabet, &params)?;
        let short = verify_compiled(&model, f, 10, 100, 100, opts.seed ^ i as u64);
        let long = verify_compiled(&model, f, 0, 500, 100, opts.seed ^ (i as u64) << 32);
        let census = mask_census(&model);
        let law = census_matches(f, census.global_heads, &census.local_heads);
        let depth = model.layers.len() == f.operator_depth().max(1);
        checks.push(check(
            f.to_string(),
            short.passed() && long.passed() && law && depth,
            format!(
                "{} strings, {} mismatches, margin violations {:?}; heads: {} global, local {:?}",
                short.strings_checked + long.strings_checked,
                short.mismatches.len() + long.mismatches.len(),
                short.margin_violations.zip(long.margin_violations).map(|(a, b)| a + b),
                census.global_heads,
                census.local_heads
            ),
        ));
    }
    Ok(checks)
}
