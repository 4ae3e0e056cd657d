use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{transition_semigroup_with_budget, Semigroup};
use crate::automata::{minimize, Dfa};
use crate::Result;

/// Outcome of a decision procedure; a negative answer carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witness")]
pub enum Verdict<W> {
    #[serde(rename = "yes")]
    Holds,
    #[serde(rename = "no")]
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// An idempotent `e` and an element `s` with `s · e ≠ e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RightZeroWitness {
    pub s: usize,
    pub e: usize,
    pub s_word: String,
    pub e_word: String,
}

/// A word whose transformation permutes `states` (indices of the minimal DFA).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationWitness {
    pub element: usize,
    pub word: String,
    pub states: Vec<usize>,
}

/// Distinct `x R y` in the local monoid `eSe`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RClassWitness {
    pub e: usize,
    pub x: usize,
    pub y: usize,
    pub e_word: String,
    pub x_word: String,
    pub y_word: String,
}

/// An element whose powers cycle with period > 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodWitness {
    pub element: usize,
    pub word: String,
    pub period: usize,
}

/// `δ(q,u) = q'`, `δ(q',v) = q`, `δ(q,x) = q`, `δ(q',x) = q'` with `q ≠ q'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigWitness {
    pub q: usize,
    pub q_prime: usize,
    pub u: String,
    pub v: String,
    pub x: String,
}

/// Every idempotent of the syntactic semigroup is a right zero.
///
/// The DFA is minimized first, so the answer is a property of the language.
pub fn is_definite(d: &Dfa, budget: usize) -> Result<Verdict<RightZeroWitness>> {
    let s = transition_semigroup_with_budget(&minimize(d), budget)?;
    for e in s.idempotents() {
        for x in 0..s.len() {
            if s.mul(x, e) != e {
                return Ok(Verdict::Fails(RightZeroWitness {
                    s: x,
                    e,
                    s_word: s.witness_str(x),
                    e_word: s.witness_str(e),
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// No non-empty word permutes a set of two or more states of the minimal DFA.
///
/// A transformation permutes some such set iff at least two states lie on
/// its cycles, so the cyclic points form the witness set.
pub fn is_nonpermutational(d: &Dfa, budget: usize) -> Result<Verdict<PermutationWitness>> {
    let s = transition_semigroup_with_budget(&minimize(d), budget)?;
    for (i, t) in s.elements().iter().enumerate() {
        let cyc = t.cyclic_points();
        if cyc.len() >= 2 {
            return Ok(Verdict::Fails(PermutationWitness {
                element: i,
                word: s.witness_str(i),
                states: cyc,
            }));
        }
    }
    Ok(Verdict::Holds)
}

/// Smallest `m` such that membership only depends on the last `m` symbols of
/// words of length ≥ m, found by iterating the set of state pairs reachable
/// with a common suffix of length `m`. `None` when the sequence of pair sets
/// cycles without ever agreeing on acceptance.
pub fn definite_degree_by_suffixes(d: &Dfa) -> Option<usize> {
    let reach = d.reachable();
    let mut pairs: Vec<(usize, usize)> = reach
        .iter()
        .flat_map(|&p| reach.iter().map(move |&q| (p, q)))
        .filter(|(p, q)| p < q)
        .collect();
    let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
    for m in 0.. {
        if pairs.iter().all(|&(p, q)| d.is_final(p) == d.is_final(q)) {
            return Some(m);
        }
        if !seen.insert(pairs.clone()) {
            return None;
        }
        let mut next: Vec<(usize, usize)> = pairs
            .iter()
            .flat_map(|&(p, q)| {
                (0..d.alphabet().len()).map(move |a| (d.step(p, a), d.step(q, a)))
            })
            .filter(|(p, q)| p != q)
            .map(|(p, q)| (p.min(q), p.max(q)))
            .collect();
        next.sort_unstable();
        next.dedup();
        pairs = next;
    }
    unreachable!()
}

/// Every local monoid `eSe` is R-trivial: within it, `xM = yM` forces `x = y`.
pub fn is_locally_r_trivial(s: &Semigroup) -> Verdict<RClassWitness> {
    for e in s.idempotents() {
        let mut local: Vec<usize> = (0..s.len()).map(|x| s.mul(s.mul(e, x), e)).collect();
        local.sort_unstable();
        local.dedup();
        let mut ideals: HashMap<Vec<usize>, usize> = HashMap::new();
        for &x in &local {
            let mut ideal: Vec<usize> = local.iter().map(|&m| s.mul(x, m)).collect();
            ideal.sort_unstable();
            ideal.dedup();
            if let Some(&y) = ideals.get(&ideal) {
                return Verdict::Fails(RClassWitness {
                    e,
                    x: y,
                    y: x,
                    e_word: s.witness_str(e),
                    x_word: s.witness_str(y),
                    y_word: s.witness_str(x),
                });
            }
            ideals.insert(ideal, x);
        }
    }
    Verdict::Holds
}

/// Searches the DFA as given (callers pass a minimal DFA) for two distinct
/// states that reach each other and are both fixed by a common non-empty
/// word. Elements are tried in witness order, so `x` is as short as possible.
pub fn find_forbidden_config(d: &Dfa, budget: usize) -> Result<Option<ConfigWitness>> {
    let s = transition_semigroup_with_budget(d, budget)?;
    let n = d.num_states();
    let paths: Vec<Vec<Option<Vec<usize>>>> = (0..n)
        .map(|p| (0..n).map(|q| d.shortest_path(p, q)).collect())
        .collect();
    let alphabet = d.alphabet();
    for (i, t) in s.elements().iter().enumerate() {
        let fixed = t.fixed_points();
        for (j, &q) in fixed.iter().enumerate() {
            for &q2 in &fixed[j + 1..] {
                if let (Some(u), Some(v)) = (&paths[q][q2], &paths[q2][q]) {
                    return Ok(Some(ConfigWitness {
                        q,
                        q_prime: q2,
                        u: alphabet.format_word(u),
                        v: alphabet.format_word(v),
                        x: s.witness_str(i),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Every element satisfies `s^n = s^{n+1}` for some `n`.
pub fn is_aperiodic(s: &Semigroup) -> Verdict<PeriodWitness> {
    for x in 0..s.len() {
        let mut first_seen = HashMap::new();
        let mut p = x;
        for step in 0usize.. {
            if let Some(&at) = first_seen.get(&p) {
                let period = step - at;
                if period > 1 {
                    return Verdict::Fails(PeriodWitness {
                        element: x,
                        word: s.witness_str(x),
                        period,
                    });
                }
                break;
            }
            first_seen.insert(p, step);
            p = s.mul(p, x);
        }
    }
    Verdict::Holds
}
