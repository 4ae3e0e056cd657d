//! Fragment classification of regular languages and of formulas.
//!
//! Languages are classified through their minimal DFA: definiteness
//! (LTL[Y]), local R-triviality (LTL[Y,P]) and aperiodicity (star-free). No
//! decision procedure for LTL[P] is known to this crate, so that field is
//! three-valued and only settled by the curated benchmark classes or, in the
//! negative, by failing LTL[Y,P].

use serde::Serialize;

use crate::algebra::{
    find_forbidden_config, is_aperiodic, is_definite, is_locally_r_trivial,
    transition_semigroup_with_budget, ConfigWitness, PeriodWitness, RClassWitness,
    RightZeroWitness, Verdict,
};
use crate::automata::{equivalent, minimize, Dfa};
use crate::datagen::{benchmark, benchmarks};
use crate::logic::Formula;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl From<bool> for Answer {
    fn from(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_definite: Option<RightZeroWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_locally_r_trivial: Option<RClassWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forbidden_config: Option<ConfigWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_aperiodic: Option<PeriodWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FragmentReport {
    pub definite: Answer,
    pub yptl_definable: Answer,
    pub star_free: Answer,
    pub ltl_p_definable: Answer,
    /// Registry language the input was found equivalent to, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub benchmark: Option<String>,
    pub witnesses: Witnesses,
}

impl FragmentReport {
    /// The three fields decided algebraically.
    pub fn decidable(&self) -> (Answer, Answer, Answer) {
        (self.definite, self.yptl_definable, self.star_free)
    }
}

/// Attention mask pattern needed to realize a formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "pattern", content = "k", rename_all = "kebab-case")]
pub enum MaskRequirement {
    BooleanOnly,
    GlobalOnly,
    LocalOnly(usize),
    Hybrid(usize),
}

pub fn classify_language(d: &Dfa, budget: usize) -> Result<FragmentReport> {
    let m = minimize(d);
    let s = transition_semigroup_with_budget(&m, budget)?;
    let mut witnesses = Witnesses::default();
    let definite = match is_definite(&m, budget)? {
        Verdict::Holds => true,
        Verdict::Fails(w) => {
            witnesses.not_definite = Some(w);
            false
        }
    };
    let yptl = match is_locally_r_trivial(&s) {
        Verdict::Holds => true,
        Verdict::Fails(w) => {
            witnesses.not_locally_r_trivial = Some(w);
            witnesses.forbidden_config = find_forbidden_config(&m, budget)?;
            false
        }
    };
    let star_free = match is_aperiodic(&s) {
        Verdict::Holds => true,
        Verdict::Fails(w) => {
            witnesses.not_aperiodic = Some(w);
            false
        }
    };
    let mut matched = None;
    for b in benchmarks() {
        if b.alphabet == *m.alphabet() && equivalent(&m, &b.dfa)?.is_equal() {
            matched = Some(b);
            break;
        }
    }
    let ltl_p_definable = match &matched {
        Some(b) => Answer::from(b.fragment_class.ltl_p()),
        None if !yptl => Answer::No,
        None => Answer::Unknown,
    };
    Ok(FragmentReport {
        definite: definite.into(),
        yptl_definable: yptl.into(),
        star_free: star_free.into(),
        ltl_p_definable,
        benchmark: matched.map(|b| b.id.to_owned()),
        witnesses,
    })
}

/// The curated classification of a registry language.
pub fn classify_benchmark(id: &str) -> Result<FragmentReport> {
    let b = benchmark(id)?;
    let c = b.fragment_class;
    Ok(FragmentReport {
        definite: c.definite().into(),
        yptl_definable: c.yptl().into(),
        star_free: Answer::Yes,
        ltl_p_definable: c.ltl_p().into(),
        benchmark: Some(b.id.to_owned()),
        witnesses: Witnesses::default(),
    })
}

/// Reads the mask pattern off the temporal operators: `Y`/`Y^k` need local
/// heads, `P`/`Ystar` global ones. `S` and `U` have no mask counterpart.
pub fn classify_formula(f: &Formula) -> Result<MaskRequirement> {
    let mut k_max = 0;
    let mut global = false;
    let mut bad = None;
    f.walk(&mut |g| match g {
        Formula::Yesterday(_) => k_max = k_max.max(1),
        Formula::YesterdayWithin(k, _) => k_max = k_max.max(*k),
        Formula::YesterdayStar(_) | Formula::Past(_) => global = true,
        Formula::Since(..) => bad = bad.or(Some("S")),
        Formula::Until(..) => bad = bad.or(Some("U")),
        _ => {}
    });
    if let Some(op) = bad {
        return Err(Error::Unsupported(op));
    }
    Ok(match (k_max, global) {
        (0, false) => MaskRequirement::BooleanOnly,
        (0, true) => MaskRequirement::GlobalOnly,
        (k, false) => MaskRequirement::LocalOnly(k),
        (k, true) => MaskRequirement::Hybrid(k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_ELEMENT_BUDGET as B;
    use crate::automata::ltl_to_dfa;
    use crate::logic::{expand_bounded, parse_formula};
    use crate::Alphabet;

    fn f(src: &str) -> Formula {
        parse_formula(src, &Alphabet::from_chars("ab").unwrap()).unwrap()
    }

    #[test]
    fn benchmark_languages_classify() {
        for b in benchmarks() {
            let got = classify_language(&b.dfa, B).unwrap();
            let want = classify_benchmark(b.id).unwrap();
            assert_eq!(got.decidable(), want.decidable(), "{}", b.id);
            assert_eq!(got.ltl_p_definable, want.ltl_p_definable, "{}", b.id);
            assert_eq!(got.benchmark.as_deref(), Some(b.id));
        }
    }

    #[test]
    fn report_examples() {
        let r = classify_benchmark("ends-with-a").unwrap();
        assert_eq!(r.decidable(), (Answer::Yes, Answer::Yes, Answer::Yes));
        assert_eq!(r.ltl_p_definable, Answer::No);
        let r = classify_benchmark("dyck-depth-2").unwrap();
        assert_eq!(r.decidable(), (Answer::No, Answer::No, Answer::Yes));
        let r = classify_language(&benchmark("dyck-depth-2").unwrap().dfa, B).unwrap();
        let w = r.witnesses.forbidden_config.unwrap();
        assert_eq!((w.u.as_str(), w.v.as_str(), w.x.as_str()), ("a", "b", "ab"));
    }

    #[test]
    fn unmatched_language_is_unknown_for_p() {
        // Σ*b: definite, not in the registry
        let d = ltl_to_dfa(&f("Y b"), &Alphabet::from_chars("ab").unwrap()).unwrap();
        let r = classify_language(&d, B).unwrap();
        assert_eq!(r.definite, Answer::Yes);
        assert_eq!(r.ltl_p_definable, Answer::Unknown);
        assert_eq!(r.benchmark, None);
        // parity: not star-free, hence not in LTL[Y,P]
        let par = Dfa::new(Alphabet::from_chars("ab").unwrap(), vec![vec![1, 0], vec![0, 1]], 0, [0]).unwrap();
        let r = classify_language(&par, B).unwrap();
        assert_eq!(r.decidable(), (Answer::No, Answer::No, Answer::No));
        assert_eq!(r.ltl_p_definable, Answer::No);
        assert!(r.witnesses.not_aperiodic.is_some());
    }

    #[test]
    fn formula_masks() {
        assert_eq!(classify_formula(&f("Y a")).unwrap(), MaskRequirement::LocalOnly(1));
        assert_eq!(classify_formula(&f("P (a & !P true)")).unwrap(), MaskRequirement::GlobalOnly);
        assert_eq!(classify_formula(&f("P (b & Y a)")).unwrap(), MaskRequirement::Hybrid(1));
        assert_eq!(classify_formula(&f("a & !b")).unwrap(), MaskRequirement::BooleanOnly);
        assert_eq!(classify_formula(&f("Y^3 a | Y b")).unwrap(), MaskRequirement::LocalOnly(3));
        assert_eq!(classify_formula(&f("Ystar a & Y^2 b")).unwrap(), MaskRequirement::Hybrid(2));
        assert!(classify_formula(&f("a S b")).is_err());
        assert!(classify_formula(&f("a U b")).is_err());
        assert_eq!(
            classify_formula(&expand_bounded(&f("Y^4 a"))).unwrap(),
            MaskRequirement::LocalOnly(1)
        );
    }

    #[test]
    fn mask_json() {
        let j = serde_json::to_string(&MaskRequirement::Hybrid(2)).unwrap();
        assert_eq!(j, r#"{"pattern":"hybrid","k":2}"#);
        let j = serde_json::to_string(&MaskRequirement::GlobalOnly).unwrap();
        assert_eq!(j, r#"{"pattern":"global-only"}"#);
    }
}
