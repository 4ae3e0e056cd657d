use std::collections::{HashMap, VecDeque};

use super::Dfa;
use crate::logic::{expand_bounded, Formula};
use crate::{Alphabet, Error, Result};

/// Compiles a `U`-free formula into a complete DFA with `L(dfa) = L(f)`.
///
/// A state records, for the current position `n`, the truth of every `Y`,
/// `P` and `S` subformula (these depend only on positions before `n`)
/// together with `n mod lcm` of the `MOD` moduli. Reading a token at `n`
/// advances to `n + 1` via
///
/// - `(Y g)@(n+1) = g@n`
/// - `(P g)@(n+1) = g@n | (P g)@n`
/// - `(g S h)@(n+1) = h@n | (g@n & (g S h)@n)`
///
/// and a state accepts when `f` holds with no token present (position `N+1`).
/// The result is the reachable part, not minimized.
pub fn ltl_to_dfa(f: &Formula, alphabet: &Alphabet) -> Result<Dfa> {
    if f.any(|g| matches!(g, Formula::Until(..))) {
        return Err(Error::Unsupported("U"));
    }
    f.check_alphabet(alphabet)?;
    let f = expand_bounded(f);
    let mut temporal: Vec<&Formula> = Vec::new();
    let mut slot: HashMap<&Formula, usize> = HashMap::new();
    let mut period = 1usize;
    f.walk(&mut |g| match g {
        Formula::Yesterday(_) | Formula::Past(_) | Formula::Since(..) => {
            if !slot.contains_key(g) {
                slot.insert(g, temporal.len());
                temporal.push(g);
            }
        }
        Formula::Mod { modulus, .. } => period = lcm(period, *modulus),
        _ => {}
    });
    let ctx = Ctx {
        alphabet,
        slot: &slot,
    };

    let start = State {
        bits: vec![false; temporal.len()],
        phase: 1 % period,
    };
    let mut index: HashMap<State, usize> = HashMap::from([(start.clone(), 0)]);
    let mut states = vec![start];
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut finals = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let cur = states[i].clone();
        if ctx.holds(&f, None, &cur) {
            finals.push(i);
        }
        let mut row = Vec::with_capacity(alphabet.len());
        for a in 0..alphabet.len() {
            let bits = temporal
                .iter()
                .enumerate()
                .map(|(j, g)| match g {
                    Formula::Yesterday(h) => ctx.holds(h, Some(a), &cur),
                    Formula::Past(h) => ctx.holds(h, Some(a), &cur) || cur.bits[j],
                    Formula::Since(g, h) => {
                        ctx.holds(h, Some(a), &cur) || (ctx.holds(g, Some(a), &cur) && cur.bits[j])
                    }
                    _ => unreachable!("only Y, P, S are tracked"),
                })
                .collect();
            let next = State {
                bits,
                phase: (cur.phase + 1) % period,
            };
            let id = *index.entry(next.clone()).or_insert_with(|| {
                states.push(next);
                queue.push_back(states.len() - 1);
                states.len() - 1
            });
            row.push(id);
        }
        // BFS visits states in index order, so rows line up with indices.
        debug_assert_eq!(delta.len(), i);
        delta.push(row);
    }
    Dfa::new(alphabet.clone(), delta, 0, finals)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct State {
    bits: Vec<bool>,
    phase: usize,
}

struct Ctx<'a> {
    alphabet: &'a Alphabet,
    slot: &'a HashMap<&'a Formula, usize>,
}

impl Ctx<'_> {
    /// Truth at the current position given the token there (`None` past the end).
    fn holds(&self, f: &Formula, token: Option<usize>, s: &State) -> bool {
        use Formula::*;
        match f {
            Top => true,
            Bot => false,
            Atom(a) => token.is_some() && token == self.alphabet.index_of(a),
            Not(g) => !self.holds(g, token, s),
            And(g, h) => self.holds(g, token, s) && self.holds(h, token, s),
            Or(g, h) => self.holds(g, token, s) || self.holds(h, token, s),
            Mod { modulus, residue } => s.phase % modulus == *residue,
            Yesterday(_) | Past(_) | Since(..) => s.bits[self.slot[f]],
            YesterdayWithin(..) | YesterdayStar(_) | Until(..) => {
                unreachable!("removed before construction")
            }
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{equivalent, minimize};
    use super::*;
    use crate::logic::random::{random_formula, OperatorSet};
    use crate::logic::{accepts, parse_formula};
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn compile(text: &str) -> Dfa {
        let ab = ab();
        ltl_to_dfa(&parse_formula(text, &ab).unwrap(), &ab).unwrap()
    }

    #[test]
    fn last_token() {
        let m = minimize(&compile("Y a"));
        assert!((2..=3).contains(&m.num_states()));
        assert!(equivalent(&m, &ends_a()).unwrap().is_equal());
    }

    #[test]
    fn first_token() {
        assert!(equivalent(&compile("P (a & !P true)"), &starts_a()).unwrap().is_equal());
    }

    #[test]
    fn empty_language() {
        let d = compile("false");
        assert_eq!(d.final_states().count(), 0);
    }

    #[test]
    fn alternating_language() {
        let d = compile("!P true | (P (a & !P true) & Y b & !P (a & Y a) & !P (b & Y b))");
        assert!(equivalent(&d, &alt_ab()).unwrap().is_equal());
    }

    #[test]
    fn modular_counter() {
        let d = compile("MOD(3,1)");
        for w in ab().words_up_to(7) {
            assert_eq!(d.accepts(&w), (w.len() + 1) % 3 == 1);
        }
    }

    #[test]
    fn rejects_until() {
        let ab = ab();
        assert!(matches!(
            ltl_to_dfa(&parse_formula("a U b", &ab).unwrap(), &ab),
            Err(Error::Unsupported("U"))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn agrees_with_direct_evaluation(seed in any::<u64>()) {
            let ab = ab();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut f = random_formula(&mut rng, &ab, &OperatorSet::past_only(), 8);
            if seed % 4 == 0 {
                f = Formula::and(f, Formula::modulo(2 + (seed as usize % 3), 1).unwrap());
            }
            let d = ltl_to_dfa(&f, &ab).unwrap();
            for w in ab.words_up_to(8) {
                prop_assert_eq!(d.accepts(&w), accepts(&f, &ab, &w), "{} on {}", f, ab.format_word(&w));
            }
        }
    }
}
