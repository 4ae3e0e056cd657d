use std::collections::VecDeque;

use super::Dfa;
use crate::{Error, Result, Word};

/// Outcome of a language-equivalence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equal,
    /// A shortest word accepted by exactly one of the two automata.
    Differ { witness: Word },
}

impl Equivalence {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equivalence::Equal)
    }
}

/// Breadth-first search of the product automaton for a state pair that
/// disagrees on acceptance. Ties between symbols resolve towards the lower
/// symbol index, so the witness is the length-lexicographically least one.
pub fn equivalent(d1: &Dfa, d2: &Dfa) -> Result<Equivalence> {
    if d1.alphabet() != d2.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let (n1, n2) = (d1.num_states(), d2.num_states());
    let idx = |p: usize, q: usize| p * n2 + q;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n1 * n2];
    let mut seen = vec![false; n1 * n2];
    let start = (d1.init(), d2.init());
    seen[idx(start.0, start.1)] = true;
    let mut queue = VecDeque::from([start]);
    while let Some((p, q)) = queue.pop_front() {
        if d1.is_final(p) != d2.is_final(q) {
            let mut witness = Vec::new();
            let mut cur = idx(p, q);
            while let Some((prev, a)) = parent[cur] {
                witness.push(a);
                cur = prev;
            }
            witness.reverse();
            return Ok(Equivalence::Differ { witness });
        }
        for a in 0..d1.alphabet().len() {
            let (p2, q2) = (d1.step(p, a), d2.step(q, a));
            let i = idx(p2, q2);
            if !seen[i] {
                seen[i] = true;
                parent[i] = Some((idx(p, q), a));
                queue.push_back((p2, q2));
            }
        }
    }
    Ok(Equivalence::Equal)
}
