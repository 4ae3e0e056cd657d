use rand::Rng;

use super::Dfa;
use crate::Alphabet;

/// Random complete DFA with `1..=max_states` states over the first
/// `1..=max_symbols` letters of `a, b, c, ...`. State 0 is initial; each
/// state is accepting with probability 1/2.
pub fn random_dfa<R: Rng + ?Sized>(rng: &mut R, max_states: usize, max_symbols: usize) -> Dfa {
    let states = rng.gen_range(1..=max_states.max(1));
    let symbols = rng.gen_range(1..=max_symbols.clamp(1, 26));
    random_dfa_exact(rng, states, symbols)
}

pub fn random_dfa_exact<R: Rng + ?Sized>(rng: &mut R, states: usize, symbols: usize) -> Dfa {
    let letters: String = ('a'..='z').take(symbols).collect();
    let alphabet = Alphabet::from_chars(&letters).expect("letters are valid tokens");
    let delta = (0..states)
        .map(|_| (0..symbols).map(|_| rng.gen_range(0..states)).collect())
        .collect();
    let finals: Vec<usize> = (0..states).filter(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(alphabet, delta, 0, finals).expect("well-formed by construction")
}
