use super::Formula;
use crate::{Error, Result};

/// Replaces every `Y^k f` by `Y f | Y Y f | ... | Y^(k) f` (a chain of `k`
/// plain yesterdays in the last disjunct) and every `Ystar f` by `P f`.
pub fn expand_bounded(f: &Formula) -> Formula {
    use Formula::*;
    match f {
        Top | Bot | Atom(_) | Mod { .. } => f.clone(),
        Not(g) => Formula::not(expand_bounded(g)),
        And(g, h) => Formula::and(expand_bounded(g), expand_bounded(h)),
        Or(g, h) => Formula::or(expand_bounded(g), expand_bounded(h)),
        Yesterday(g) => Formula::yesterday(expand_bounded(g)),
        YesterdayWithin(k, g) => {
            let inner = expand_bounded(g);
            let chains = (1..=*k).scan(inner, |acc, _| {
                *acc = Formula::yesterday(acc.clone());
                Some(acc.clone())
            });
            Formula::disjunction(chains).expect("k >= 1")
        }
        YesterdayStar(g) | Past(g) => Formula::past(expand_bounded(g)),
        Since(g, h) => Formula::since(expand_bounded(g), expand_bounded(h)),
        Until(g, h) => Formula::until(expand_bounded(g), expand_bounded(h)),
    }
}

/// Eliminates plain `Y` in favour of `Y^k` and `MOD(m, ·)`:
///
/// `Y f  ↦  ⋁_{i=1..m} (MOD(m, i) & Y^k (MOD(m, i-1) & f))`
///
/// which is sound for `2 <= k <= m` because the only position among the
/// previous `k` with residue `i-1` is the immediate predecessor.
pub fn rewrite_with_mod(f: &Formula, k: usize, m: usize) -> Result<Formula> {
    if k < 2 || m < k {
        return Err(Error::InvalidParameter(format!(
            "mod rewrite needs 2 <= k <= m, got k={k}, m={m}"
        )));
    }
    rewrite(f, k, m)
}

fn rewrite(f: &Formula, k: usize, m: usize) -> Result<Formula> {
    use Formula::*;
    Ok(match f {
        Top | Bot | Atom(_) | Mod { .. } => f.clone(),
        Not(g) => Formula::not(rewrite(g, k, m)?),
        And(g, h) => Formula::and(rewrite(g, k, m)?, rewrite(h, k, m)?),
        Or(g, h) => Formula::or(rewrite(g, k, m)?, rewrite(h, k, m)?),
        Past(g) => Formula::past(rewrite(g, k, m)?),
        YesterdayWithin(j, g) => Formula::YesterdayWithin(*j, Box::new(rewrite(g, k, m)?)),
        Yesterday(g) => {
            let inner = rewrite(g, k, m)?;
            let disjuncts = (1..=m).map(|i| {
                let here = Formula::modulo(m, i % m).expect("m > 0");
                let before = Formula::modulo(m, (i - 1) % m).expect("m > 0");
                Formula::and(
                    here,
                    Formula::YesterdayWithin(k, Box::new(Formula::and(before, inner.clone()))),
                )
            });
            Formula::disjunction(disjuncts).expect("m >= 1")
        }
        YesterdayStar(_) => return Err(Error::Unsupported("Ystar")),
        Since(..) => return Err(Error::Unsupported("S")),
        Until(..) => return Err(Error::Unsupported("U")),
    })
}

/// The three families of basic locally testable languages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalKind {
    /// Strings containing `u` (`|u| = m`) as a contiguous factor.
    Factor,
    /// Strings whose length-`(m-1)` prefix is `u`.
    Prefix,
    /// Strings whose length-`(m-1)` suffix is `u`.
    Suffix,
}

/// Formula defining the basic locally `m`-testable language of the given kind.
///
/// - factor `u_1..u_m`: `P(u_m & Y(u_{m-1} & ... & Y(u_1)))`
/// - prefix `u_1..u_{m-1}`: `P(u_{m-1} & Y(... & Y(u_1 & !P true)))`, or `true` when `m = 1`
/// - suffix `u_1..u_{m-1}`: `Y(u_{m-1} & Y(... & Y(u_1)))`, or `true` when `m = 1`
pub fn locally_testable_formula<S: AsRef<str>>(kind: LocalKind, u: &[S], m: usize) -> Result<Formula> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let expected = match kind {
        LocalKind::Factor => m,
        LocalKind::Prefix | LocalKind::Suffix => m - 1,
    };
    if u.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            actual: u.len(),
        });
    }
    if u.is_empty() {
        return Ok(Formula::Top);
    }
    let mut inner = Formula::atom(u[0].as_ref());
    if kind == LocalKind::Prefix {
        inner = Formula::and(inner, Formula::not(Formula::past(Formula::Top)));
    }
    for tok in &u[1..] {
        inner = Formula::and(Formula::atom(tok.as_ref()), Formula::yesterday(inner));
    }
    Ok(match kind {
        LocalKind::Factor | LocalKind::Prefix => Formula::past(inner),
        LocalKind::Suffix => Formula::yesterday(inner),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::random::{random_formula, OperatorSet};
    use crate::logic::{accepts, parse_formula};
    use crate::Alphabet;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn a() -> Formula {
        Formula::atom("a")
    }

    #[test]
    fn expansion_examples() {
        let y2 = Formula::yesterday_within(2, a()).unwrap();
        assert_eq!(
            expand_bounded(&y2),
            Formula::or(Formula::yesterday(a()), Formula::yesterday(Formula::yesterday(a())))
        );
        let y1 = Formula::yesterday_within(1, a()).unwrap();
        assert_eq!(expand_bounded(&y1), Formula::yesterday(a()));
        assert_eq!(expand_bounded(&Formula::yesterday_star(a())), Formula::past(a()));
    }

    #[test]
    fn expansion_depth_overhead() {
        let psi = Formula::past(Formula::and(a(), Formula::yesterday(Formula::atom("b"))));
        for k in 1..6 {
            let f = Formula::yesterday_within(k, psi.clone()).unwrap();
            assert_eq!(f.operator_depth(), psi.operator_depth() + 1);
            assert_eq!(expand_bounded(&f).operator_depth(), psi.operator_depth() + k);
        }
    }

    #[test]
    fn mod_rewrite_shape() {
        let f = rewrite_with_mod(&Formula::yesterday(a()), 2, 2).unwrap();
        let want = Formula::or(
            Formula::and(
                Formula::modulo(2, 1).unwrap(),
                Formula::yesterday_within(2, Formula::and(Formula::modulo(2, 0).unwrap(), a())).unwrap(),
            ),
            Formula::and(
                Formula::modulo(2, 0).unwrap(),
                Formula::yesterday_within(2, Formula::and(Formula::modulo(2, 1).unwrap(), a())).unwrap(),
            ),
        );
        assert_eq!(f, want);
        assert_eq!(rewrite_with_mod(&Formula::past(a()), 3, 4).unwrap(), Formula::past(a()));
    }

    #[test]
    fn mod_rewrite_exhaustive_on_last_token() {
        let ab = ab();
        let f = Formula::yesterday(a());
        let g = rewrite_with_mod(&f, 2, 2).unwrap();
        for w in ab.words_up_to(10) {
            assert_eq!(accepts(&f, &ab, &w), accepts(&g, &ab, &w), "{}", ab.format_word(&w));
        }
    }

    #[test]
    fn mod_rewrite_rejects() {
        let ab = ab();
        assert!(rewrite_with_mod(&a(), 1, 2).is_err());
        assert!(rewrite_with_mod(&a(), 3, 2).is_err());
        for bad in ["a S b", "a U b", "Ystar a"] {
            let f = parse_formula(bad, &ab).unwrap();
            assert!(matches!(rewrite_with_mod(&f, 2, 2), Err(Error::Unsupported(_))));
        }
    }

    #[test]
    fn local_formulas() {
        let ab = ab();
        let p = |s| parse_formula(s, &ab).unwrap();
        assert_eq!(locally_testable_formula(LocalKind::Factor, &["a", "b"], 2).unwrap(), p("P (b & Y a)"));
        assert_eq!(locally_testable_formula(LocalKind::Prefix, &["a"], 2).unwrap(), p("P (a & !P true)"));
        assert_eq!(locally_testable_formula(LocalKind::Suffix, &["a"], 2).unwrap(), p("Y a"));
        assert_eq!(locally_testable_formula::<&str>(LocalKind::Suffix, &[], 1).unwrap(), Formula::Top);
        assert_eq!(locally_testable_formula(LocalKind::Factor, &["a"], 1).unwrap(), p("P a"));
        assert!(matches!(
            locally_testable_formula(LocalKind::Factor, &["a"], 2),
            Err(Error::LengthMismatch { expected: 2, actual: 1 })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn expansion_preserves_language(seed in any::<u64>(), size in 1usize..9, sigma in 1usize..4) {
            let alphabet = Alphabet::from_chars(&"abc"[..sigma]).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let f = random_formula(&mut rng, &alphabet, &OperatorSet::all(), size);
            let g = expand_bounded(&f);
            prop_assert!(!g.any(|n| matches!(n, Formula::YesterdayWithin(..) | Formula::YesterdayStar(_))));
            for w in alphabet.words_up_to(8) {
                prop_assert_eq!(accepts(&f, &alphabet, &w), accepts(&g, &alphabet, &w));
            }
        }
    }
}
