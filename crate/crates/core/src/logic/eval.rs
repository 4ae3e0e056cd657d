use super::Formula;
use crate::{Alphabet, Error, Result};

/// A position in `1..=N+1` of a string of length `N`.
#[derive(Clone, Copy, Debug)]
pub struct EvalPoint<'w> {
    word: &'w [usize],
    position: usize,
}

impl<'w> EvalPoint<'w> {
    pub fn new(word: &'w [usize], position: usize) -> Result<Self> {
        if position == 0 || position > word.len() + 1 {
            return Err(Error::InvalidParameter(format!(
                "position {position} outside 1..={}",
                word.len() + 1
            )));
        }
        Ok(Self { word, position })
    }

    /// The acceptance position `N+1`.
    pub fn end(word: &'w [usize]) -> Self {
        Self {
            word,
            position: word.len() + 1,
        }
    }

    pub fn word(&self) -> &'w [usize] {
        self.word
    }

    pub fn position(&self) -> usize {
        self.position
    }
}

pub fn evaluate(f: &Formula, alphabet: &Alphabet, at: EvalPoint<'_>) -> bool {
    truth_table(f, alphabet, at.word)[at.position - 1]
}

/// `w ⊨ f`, i.e. `f` holds at position `|w| + 1`.
pub fn accepts(f: &Formula, alphabet: &Alphabet, word: &[usize]) -> bool {
    *truth_table(f, alphabet, word).last().expect("table covers N+1")
}

/// Truth of `f` at every position; entry `i` is position `i + 1`, so the
/// table has `|word| + 1` entries.
pub fn truth_table(f: &Formula, alphabet: &Alphabet, word: &[usize]) -> Vec<bool> {
    table(f, alphabet, word)
}

// Positions are 1-based in the semantics; vectors here are 0-based so that
// index `i` holds position `i + 1`.
fn table(f: &Formula, alphabet: &Alphabet, word: &[usize]) -> Vec<bool> {
    use Formula::*;
    let len = word.len() + 1;
    match f {
        Top => vec![true; len],
        Bot => vec![false; len],
        Atom(a) => {
            let sym = alphabet.index_of(a);
            (0..len)
                .map(|i| i < word.len() && Some(word[i]) == sym)
                .collect()
        }
        Mod { modulus, residue } => (0..len).map(|i| (i + 1) % modulus == *residue).collect(),
        Not(g) => table(g, alphabet, word).into_iter().map(|b| !b).collect(),
        And(g, h) => zip(table(g, alphabet, word), table(h, alphabet, word), |x, y| x && y),
        Or(g, h) => zip(table(g, alphabet, word), table(h, alphabet, word), |x, y| x || y),
        Yesterday(g) => within(&table(g, alphabet, word), 1),
        YesterdayWithin(k, g) => within(&table(g, alphabet, word), *k),
        YesterdayStar(g) | Past(g) => {
            let t = table(g, alphabet, word);
            let mut out = vec![false; len];
            for i in 1..len {
                out[i] = out[i - 1] || t[i - 1];
            }
            out
        }
        Since(g, h) => {
            let (tg, th) = (table(g, alphabet, word), table(h, alphabet, word));
            let mut out = vec![false; len];
            for i in 1..len {
                out[i] = th[i - 1] || (tg[i - 1] && out[i - 1]);
            }
            out
        }
        Until(g, h) => {
            let (tg, th) = (table(g, alphabet, word), table(h, alphabet, word));
            let mut out = vec![false; len];
            for i in (0..len - 1).rev() {
                out[i] = th[i + 1] || (tg[i + 1] && out[i + 1]);
            }
            out
        }
    }
}

fn zip(x: Vec<bool>, y: Vec<bool>, op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    x.into_iter().zip(y).map(|(a, b)| op(a, b)).collect()
}

fn within(t: &[bool], k: usize) -> Vec<bool> {
    (0..t.len())
        .map(|i| (1..=k.min(i)).any(|j| t[i - j]))
        .collect()
}
