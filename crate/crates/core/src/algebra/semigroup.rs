use std::collections::{HashMap, VecDeque};

use crate::automata::Dfa;
use crate::{Alphabet, Error, Result, Word};

pub const DEFAULT_ELEMENT_BUDGET: usize = 1_000_000;

/// A total map on the states of a fixed DFA.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation(Box<[u32]>);

impl Transformation {
    pub fn apply(&self, q: usize) -> usize {
        self.0[q] as usize
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Transformation) -> Transformation {
        Transformation(self.0.iter().map(|&q| other.0[q as usize]).collect())
    }

    pub fn image(&self) -> &[u32] {
        &self.0
    }

    /// States lying on a cycle of the functional graph; `self` restricted to
    /// them is a bijection, and every subset on which `self` permutes is
    /// contained in them.
    pub fn cyclic_points(&self) -> Vec<usize> {
        let n = self.0.len();
        (0..n)
            .filter(|&q| {
                let mut x = q;
                for _ in 0..n {
                    x = self.apply(x);
                    if x == q {
                        return true;
                    }
                }
                false
            })
            .collect()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&q| self.apply(q) == q).collect()
    }
}

/// Transition semigroup `{t_w : w ∈ Σ⁺}` of a DFA.
///
/// Elements are numbered in breadth-first order of their shortest witness
/// words (ties broken by symbol order), so element 0.. are the generators'
/// images in first-seen order.
#[derive(Clone, Debug)]
pub struct Semigroup {
    alphabet: Alphabet,
    elements: Vec<Transformation>,
    index: HashMap<Transformation, usize>,
    generators: Vec<usize>,
    witnesses: Vec<Word>,
}

pub fn transition_semigroup(d: &Dfa) -> Result<Semigroup> {
    transition_semigroup_with_budget(d, DEFAULT_ELEMENT_BUDGET)
}

/// Closure of the letter transformations under composition; fails with
/// [`Error::ElementBudget`] once more than `budget` elements appear.
pub fn transition_semigroup_with_budget(d: &Dfa, budget: usize) -> Result<Semigroup> {
    let n = d.num_states();
    let letters: Vec<Transformation> = (0..d.alphabet().len())
        .map(|a| Transformation((0..n).map(|q| d.step(q, a) as u32).collect()))
        .collect();
    let mut s = Semigroup {
        alphabet: d.alphabet().clone(),
        elements: Vec::new(),
        index: HashMap::new(),
        generators: Vec::with_capacity(letters.len()),
        witnesses: Vec::new(),
    };
    let mut queue = VecDeque::new();
    for (a, t) in letters.iter().enumerate() {
        let id = s.intern(t.clone(), vec![a], budget, &mut queue)?;
        s.generators.push(id);
    }
    while let Some(i) = queue.pop_front() {
        for (a, t) in letters.iter().enumerate() {
            let next = s.elements[i].then(t);
            let mut word = s.witnesses[i].clone();
            word.push(a);
            s.intern(next, word, budget, &mut queue)?;
        }
    }
    Ok(s)
}

impl Semigroup {
    fn intern(
        &mut self,
        t: Transformation,
        word: Word,
        budget: usize,
        queue: &mut VecDeque<usize>,
    ) -> Result<usize> {
        if let Some(&id) = self.index.get(&t) {
            return Ok(id);
        }
        if self.elements.len() >= budget {
            return Err(Error::ElementBudget(budget));
        }
        let id = self.elements.len();
        self.index.insert(t.clone(), id);
        self.elements.push(t);
        self.witnesses.push(word);
        queue.push_back(id);
        Ok(id)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &Transformation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn index_of(&self, t: &Transformation) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Element induced by each symbol.
    pub fn generator(&self, sym: usize) -> usize {
        self.generators[sym]
    }

    /// A shortest non-empty word inducing element `i`.
    pub fn witness(&self, i: usize) -> &Word {
        &self.witnesses[i]
    }

    /// [`Semigroup::witness`] rendered with the alphabet.
    pub fn witness_str(&self, i: usize) -> String {
        self.alphabet.format_word(&self.witnesses[i])
    }

    /// `x · y`: apply `x`, then `y`.
    pub fn mul(&self, x: usize, y: usize) -> usize {
        let t = self.elements[x].then(&self.elements[y]);
        self.index[&t]
    }

    /// Full multiplication table, `table[x][y] = x · y`.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|x| (0..self.len()).map(|y| self.mul(x, y)).collect())
            .collect()
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.mul(e, e) == e).collect()
    }
}
