//! Seeded random formulas and exhaustive enumeration by size.

use rand::Rng;

use super::Formula;
use crate::Alphabet;

/// Which temporal operators a generator may use. Booleans, constants and
/// atoms are always available.
#[derive(Clone, Debug, Default)]
pub struct OperatorSet {
    pub yesterday: bool,
    /// Bounds `k` for which `Y^k` may appear.
    pub within: Vec<usize>,
    pub star: bool,
    pub past: bool,
    pub since: bool,
    pub until: bool,
}

impl OperatorSet {
    /// Every operator, with `Y^2` and `Y^3` as the bounded forms.
    pub fn all() -> Self {
        Self {
            yesterday: true,
            within: vec![2, 3],
            star: true,
            past: true,
            since: true,
            until: true,
        }
    }

    /// Everything except `U`.
    pub fn past_only() -> Self {
        Self {
            until: false,
            ..Self::all()
        }
    }

    /// `Y` and `P` only.
    pub fn yesterday_past() -> Self {
        Self {
            yesterday: true,
            past: true,
            ..Self::default()
        }
    }

    fn unary(&self) -> Vec<Box<dyn Fn(Formula) -> Formula + '_>> {
        let mut out: Vec<Box<dyn Fn(Formula) -> Formula>> = vec![Box::new(Formula::not)];
        if self.yesterday {
            out.push(Box::new(Formula::yesterday));
        }
        for &k in &self.within {
            out.push(Box::new(move |f| Formula::YesterdayWithin(k, Box::new(f))));
        }
        if self.star {
            out.push(Box::new(Formula::yesterday_star));
        }
        if self.past {
            out.push(Box::new(Formula::past));
        }
        out
    }

    fn binary(&self) -> Vec<fn(Formula, Formula) -> Formula> {
        let mut out: Vec<fn(Formula, Formula) -> Formula> = vec![Formula::and, Formula::or];
        if self.since {
            out.push(Formula::since);
        }
        if self.until {
            out.push(Formula::until);
        }
        out
    }
}

fn leaves(alphabet: &Alphabet) -> Vec<Formula> {
    let mut out = vec![Formula::Top, Formula::Bot];
    out.extend(alphabet.tokens().iter().map(|t| Formula::atom(t.clone())));
    out
}

/// A random formula with at most `max_size` nodes. Atoms are drawn more often
/// than constants so that most formulas depend on the input.
pub fn random_formula<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    ops: &OperatorSet,
    max_size: usize,
) -> Formula {
    let size = rng.gen_range(1..=max_size.max(1));
    build(rng, alphabet, ops, size)
}

fn build<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, ops: &OperatorSet, size: usize) -> Formula {
    if size <= 1 {
        return if rng.gen_bool(0.15) {
            if rng.gen_bool(0.5) {
                Formula::Top
            } else {
                Formula::Bot
            }
        } else {
            Formula::atom(alphabet.token(rng.gen_range(0..alphabet.len())))
        };
    }
    if size == 2 || rng.gen_bool(0.5) {
        let unary = ops.unary();
        let op = &unary[rng.gen_range(0..unary.len())];
        return op(build(rng, alphabet, ops, size - 1));
    }
    let binary = ops.binary();
    let op = binary[rng.gen_range(0..binary.len())];
    let left = rng.gen_range(1..size - 1);
    op(
        build(rng, alphabet, ops, left),
        build(rng, alphabet, ops, size - 1 - left),
    )
}

/// Every formula over `ops` with at most `max_size` nodes and operator depth
/// at most `max_depth`, grouped by increasing size. Stops once `budget`
/// formulas have been produced; the flag reports whether enumeration was complete.
pub fn enumerate_formulas(
    alphabet: &Alphabet,
    ops: &OperatorSet,
    max_size: usize,
    max_depth: usize,
    budget: usize,
) -> (Vec<Formula>, bool) {
    // by_size[s] holds every formula of exactly s nodes (depth-filtered).
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); max_size + 1];
    let mut total = 0usize;
    let unary = ops.unary();
    let binary = ops.binary();
    for s in 1..=max_size {
        let mut layer = Vec::new();
        if s == 1 {
            layer = leaves(alphabet);
        } else {
            for child in &by_size[s - 1] {
                for op in &unary {
                    layer.push(op(child.clone()));
                }
            }
            for l in 1..s - 1 {
                let r = s - 1 - l;
                for lhs in &by_size[l] {
                    for rhs in &by_size[r] {
                        for op in &binary {
                            layer.push(op(lhs.clone(), rhs.clone()));
                        }
                    }
                }
            }
        }
        layer.retain(|f| f.operator_depth() <= max_depth);
        if total + layer.len() > budget {
            layer.truncate(budget - total);
            by_size[s] = layer;
            return (by_size.into_iter().flatten().collect(), false);
        }
        total += layer.len();
        by_size[s] = layer;
    }
    (by_size.into_iter().flatten().collect(), true)
}
