use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{check, Check, SuiteOptions};
use crate::automata::ltl_to_dfa as to_dfa;
use crate::logic::random::{enumerate_formulas, random_formula, OperatorSet};
use crate::logic::{
    accepts, expand_bounded, locally_testable_formula, parse_formula, rewrite_with_mod, Formula,
    LocalKind,
};
use crate::{Alphabet, Result};

fn ab() -> Alphabet {
    Alphabet::from_chars("ab").expect("valid alphabet")
}

/// Strings up to `max_len` on which `f` and `g` disagree.
fn disagreements(f: &Formula, g: &Formula, alphabet: &Alphabet, max_len: usize) -> Vec<String> {
    alphabet
        .words_up_to(max_len)
        .filter(|w| accepts(f, alphabet, w) != accepts(g, alphabet, w))
        .map(|w| alphabet.format_word(&w))
        .collect()
}

pub(crate) fn ltl_to_dfa(opts: &SuiteOptions) -> Result<Vec<Check>> {
    let ab = ab();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let ops = OperatorSet::past_only();
    let formulas: Vec<Formula> = (0..opts.trials.unwrap_or(100))
        .map(|_| random_formula(&mut rng, &ab, &ops, 8))
        .collect();
    let words: Vec<Vec<usize>> = ab.words_up_to(8).collect();
    let mismatches = formulas
        .par_iter()
        .map(|f| -> Result<usize> {
            let d = to_dfa(f, &ab)?;
            Ok(words.iter().filter(|w| d.accepts(w) != accepts(f, &ab, w)).count())
        })
        .collect::<Result<Vec<_>>>()?;
    let total: usize = mismatches.iter().sum();
    Ok(vec![check(
        "automaton agrees with direct evaluation",
        total == 0,
        format!("{} formulas x {} strings, {total} mismatches", formulas.len(), words.len()),
    )])
}

/// Brute-force membership in the basic locally testable languages.
fn brute(kind: LocalKind, u: &[usize], w: &[usize]) -> bool {
    match kind {
        LocalKind::Factor => w.windows(u.len()).any(|f| f == u),
        LocalKind::Prefix => w.starts_with(u),
        LocalKind::Suffix => w.ends_with(u),
    }
}

pub(crate) fn local_testability(_opts: &SuiteOptions) -> Result<Vec<Check>> {
    let ab = ab();
    let mut checks = Vec::new();
    for m in 1..=3 {
        for kind in [LocalKind::Factor, LocalKind::Prefix, LocalKind::Suffix] {
            let len = if kind == LocalKind::Factor { m } else { m - 1 };
            let mut bad = 0;
            let mut count = 0;
            for u in ab.words_of_len(len) {
                let toks: Vec<&str> = u.iter().map(|&s| ab.token(s)).collect();
                let f = locally_testable_formula(kind, &toks, m)?;
                count += 1;
                bad += ab.words_up_to(8).filter(|w| accepts(&f, &ab, w) != brute(kind, &u, w)).count();
            }
            checks.push(check(
                format!("{kind:?} formulas, m = {m}"),
                bad == 0,
                format!("{count} formulas, {bad} mismatches on |w| <= 8"),
            ));
        }
    }
    Ok(checks)
}

pub(crate) fn modular(opts: &SuiteOptions) -> Result<Vec<Check>> {
    let ab = ab();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let trials = opts.trials.unwrap_or(20);
    let mut checks = Vec::new();
    for k in [2, 3] {
        let ops = OperatorSet {
            yesterday: true,
            within: vec![k],
            past: true,
            ..OperatorSet::default()
        };
        let mut formulas = vec![
            parse_formula(&format!("Y^{k} a"), &ab)?,
            parse_formula(&format!("Y^{k} (a & Y b) | P (Y^{k} b)"), &ab)?,
        ];
        formulas.extend((0..trials).map(|_| random_formula(&mut rng, &ab, &ops, 7)));
        let bad: usize = formulas
            .iter()
            .map(|f| disagreements(f, &expand_bounded(f), &ab, 10).len())
            .sum();
        checks.push(check(
            format!("Y^{k} expansion"),
            bad == 0,
            format!("{} formulas, {bad} mismatches on |w| <= 10", formulas.len()),
        ));

        let y_ops = OperatorSet {
            yesterday: true,
            past: true,
            ..OperatorSet::default()
        };
        let mut formulas = vec![parse_formula("Y a", &ab)?, parse_formula("Y (b & Y a) | P (Y b)", &ab)?];
        formulas.extend((0..trials).map(|_| random_formula(&mut rng, &ab, &y_ops, 7)));
        let mut bad = 0;
        for m in k..=4 {
            for f in &formulas {
                bad += disagreements(f, &rewrite_with_mod(f, k, m)?, &ab, 10).len();
            }
        }
        checks.push(check(
            format!("Y rewritten with Y^{k} and MOD(m, .), m in {k}..=4"),
            bad == 0,
            format!("{} formulas, {bad} mismatches on |w| <= 10", formulas.len()),
        ));
    }

    let (formulas, complete) = separation_corpus(&ab);
    let w = ab.parse_word("ababa")?;
    let w2 = ab.parse_word("abab")?;
    let found: Vec<String> = formulas
        .par_iter()
        .filter(|f| accepts(f, &ab, &w) != accepts(f, &ab, &w2))
        .map(|f| f.to_string())
        .collect();
    checks.push(check(
        "no Y^2/P formula of size <= 5, depth <= 2 separates ababa from abab",
        found.is_empty() && complete,
        format!(
            "{} formulas enumerated (complete: {complete}), {} distinguishers{}",
            formulas.len(),
            found.len(),
            found.first().map(|f| format!(", e.g. {f}")).unwrap_or_default()
        ),
    ));
    Ok(checks)
}

/// All formulas over `{true, false, a, b, !, &, |, Y^2, P}` with at most 5
/// nodes and operator depth at most 2.
pub fn separation_corpus(ab: &Alphabet) -> (Vec<Formula>, bool) {
    let ops = OperatorSet {
        within: vec![2],
        past: true,
        ..OperatorSet::default()
    };
    enumerate_formulas(ab, &ops, 5, 2, 100_000)
}
