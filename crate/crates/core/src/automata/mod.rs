//! Complete deterministic finite automata.
//!
//! Every [`Dfa`] is total: partial transition tables are completed with a
//! non-accepting absorbing sink when loaded.

mod from_formula;
mod minimize;
mod product;
pub mod random;
mod slice;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{Alphabet, Error, Result, Word};

pub use from_formula::ltl_to_dfa;
pub use minimize::minimize;
pub use product::{equivalent, Equivalence};
pub use slice::{count_slice, sample_slice, SliceSampler};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    /// `delta[q][a]` is the successor of state `q` on symbol `a`.
    delta: Vec<Vec<usize>>,
    init: usize,
    finals: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunResult {
    pub accepted: bool,
    /// States `q_0..q_N`, starting at the initial state.
    pub trace: Vec<usize>,
}

/// On-disk form:
/// `{"alphabet": [...], "states": K, "init": i, "finals": [...], "delta": {"<state>": {"<token>": state}}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DfaJson {
    pub alphabet: Alphabet,
    pub states: usize,
    pub init: usize,
    pub finals: Vec<usize>,
    pub delta: BTreeMap<String, BTreeMap<String, usize>>,
}

/// A DFA read from a possibly partial description.
#[derive(Clone, Debug)]
pub struct LoadedDfa {
    pub dfa: Dfa,
    /// Whether a sink state had to be added to make the table total.
    pub completed: bool,
}

impl Dfa {
    /// Builds a complete DFA; `delta` must have one row per state and one
    /// entry per symbol.
    pub fn new(
        alphabet: Alphabet,
        delta: Vec<Vec<usize>>,
        init: usize,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let n = delta.len();
        if n == 0 {
            return Err(Error::InvalidDfa("no states".into()));
        }
        if init >= n {
            return Err(Error::InvalidDfa(format!("initial state {init} out of range")));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::InvalidDfa(format!("state {q} has {} transitions", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&t| t >= n) {
                return Err(Error::InvalidDfa(format!("state {q} targets {bad}")));
            }
        }
        let mut is_final = vec![false; n];
        for f in finals {
            if f >= n {
                return Err(Error::InvalidDfa(format!("final state {f} out of range")));
            }
            is_final[f] = true;
        }
        Ok(Self {
            alphabet,
            delta,
            init,
            finals: is_final,
        })
    }

    /// Builds a DFA from a partial transition list; missing transitions go to
    /// a fresh non-accepting sink.
    pub fn from_partial<S: AsRef<str>>(
        alphabet: Alphabet,
        states: usize,
        init: usize,
        finals: impl IntoIterator<Item = usize>,
        transitions: &[(usize, S, usize)],
    ) -> Result<LoadedDfa> {
        let mut table = vec![vec![None; alphabet.len()]; states];
        for (q, tok, t) in transitions {
            let a = alphabet
                .index_of(tok.as_ref())
                .ok_or_else(|| Error::UnknownToken(tok.as_ref().to_owned()))?;
            if *q >= states || *t >= states {
                return Err(Error::InvalidDfa(format!("transition {q} -> {t} out of range")));
            }
            if table[*q][a].replace(*t).is_some_and(|old| old != *t) {
                return Err(Error::InvalidDfa(format!("state {q} has two `{}` transitions", tok.as_ref())));
            }
        }
        let completed = table.iter().flatten().any(Option::is_none);
        let sink = states;
        let mut delta: Vec<Vec<usize>> = table
            .into_iter()
            .map(|row| row.into_iter().map(|t| t.unwrap_or(sink)).collect())
            .collect();
        if completed {
            delta.push(vec![sink; alphabet.len()]);
        }
        Ok(LoadedDfa {
            dfa: Dfa::new(alphabet, delta, init, finals)?,
            completed,
        })
    }

    pub fn from_json(json: &DfaJson) -> Result<LoadedDfa> {
        let mut transitions = Vec::new();
        for (state, row) in &json.delta {
            let q: usize = state
                .parse()
                .map_err(|_| Error::InvalidDfa(format!("state key `{state}` is not an index")))?;
            for (tok, &t) in row {
                transitions.push((q, tok.as_str(), t));
            }
        }
        Dfa::from_partial(
            json.alphabet.clone(),
            json.states,
            json.init,
            json.finals.iter().copied(),
            &transitions,
        )
    }

    pub fn from_json_str(text: &str) -> Result<LoadedDfa> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> DfaJson {
        let delta = self
            .delta
            .iter()
            .enumerate()
            .map(|(q, row)| {
                let row = row
                    .iter()
                    .enumerate()
                    .map(|(a, &t)| (self.alphabet.token(a).to_owned(), t))
                    .collect();
                (q.to_string(), row)
            })
            .collect();
        DfaJson {
            alphabet: self.alphabet.clone(),
            states: self.num_states(),
            init: self.init,
            finals: self.final_states().collect(),
            delta,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn init(&self) -> usize {
        self.init
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn final_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_states()).filter(|&q| self.finals[q])
    }

    pub fn step(&self, q: usize, sym: usize) -> usize {
        self.delta[q][sym]
    }

    /// Extended transition function.
    pub fn walk(&self, q: usize, word: &[usize]) -> usize {
        word.iter().fold(q, |q, &a| self.delta[q][a])
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.finals[self.walk(self.init, word)]
    }

    /// Runs `word`; fails if it contains a symbol outside the alphabet.
    pub fn run(&self, word: &[usize]) -> Result<RunResult> {
        let mut trace = Vec::with_capacity(word.len() + 1);
        let mut q = self.init;
        trace.push(q);
        for &a in word {
            if a >= self.alphabet.len() {
                return Err(Error::UnknownToken(format!("#{a}")));
            }
            q = self.delta[q][a];
            trace.push(q);
        }
        Ok(RunResult {
            accepted: self.finals[q],
            trace,
        })
    }

    /// Parses `text` with the DFA's alphabet and runs it.
    pub fn run_str(&self, text: &str) -> Result<RunResult> {
        self.run(&self.alphabet.parse_word(text)?)
    }

    /// Same automaton with accepting and rejecting states swapped.
    pub fn complement(&self) -> Dfa {
        Dfa {
            finals: self.finals.iter().map(|f| !f).collect(),
            ..self.clone()
        }
    }

    /// States reachable from the initial state, in BFS order over symbols.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.init];
        seen[self.init] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            i += 1;
            for &t in &self.delta[q] {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }

    /// Restricts to reachable states and renumbers them in BFS order, so that
    /// isomorphic reachable parts compare equal.
    pub fn canonical(&self) -> Dfa {
        let order = self.reachable();
        let mut rename = vec![usize::MAX; self.num_states()];
        for (i, &q) in order.iter().enumerate() {
            rename[q] = i;
        }
        let delta = order
            .iter()
            .map(|&q| self.delta[q].iter().map(|&t| rename[t]).collect())
            .collect();
        let finals = order.iter().map(|&q| self.finals[q]).collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            init: 0,
            finals,
        }
    }

    /// Shortest word leading from `from` to `to`, if any.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Word> {
        if from == to {
            return Some(Vec::new());
        }
        let n = self.num_states();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            for (a, &t) in self.delta[q].iter().enumerate() {
                if seen[t] {
                    continue;
                }
                seen[t] = true;
                parent[t] = Some((q, a));
                if t == to {
                    let mut word = Vec::new();
                    let mut cur = t;
                    while let Some((p, a)) = parent[cur] {
                        word.push(a);
                        cur = p;
                    }
                    word.reverse();
                    return Some(word);
                }
                queue.push_back(t);
            }
        }
        None
    }
}
