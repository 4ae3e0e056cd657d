use std::collections::BTreeSet;
use std::fmt;

use crate::{Alphabet, Error, Result};

/// Past-time LTL formula with the derived bounded and unbounded lookback
/// operators and modular position predicates.
///
/// Equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Bot,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    /// `Y f`: `f` held at the previous position.
    Yesterday(Box<Formula>),
    /// `Y^k f`: `f` held at one of the previous `k` positions.
    YesterdayWithin(usize, Box<Formula>),
    /// `Ystar f`: `f` held at some earlier position.
    YesterdayStar(Box<Formula>),
    /// `P f`: `f` held at some earlier position.
    Past(Box<Formula>),
    Since(Box<Formula>, Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    /// Holds at positions `n` with `n ≡ residue (mod modulus)`.
    Mod { modulus: usize, residue: usize },
}

impl Formula {
    pub fn atom(token: impl Into<String>) -> Self {
        Formula::Atom(token.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Self {
        Formula::And(Box::new(f), Box::new(g))
    }

    pub fn or(f: Formula, g: Formula) -> Self {
        Formula::Or(Box::new(f), Box::new(g))
    }

    pub fn yesterday(f: Formula) -> Self {
        Formula::Yesterday(Box::new(f))
    }

    pub fn yesterday_within(k: usize, f: Formula) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("Y^k requires k >= 1".into()));
        }
        Ok(Formula::YesterdayWithin(k, Box::new(f)))
    }

    pub fn yesterday_star(f: Formula) -> Self {
        Formula::YesterdayStar(Box::new(f))
    }

    pub fn past(f: Formula) -> Self {
        Formula::Past(Box::new(f))
    }

    pub fn since(f: Formula, g: Formula) -> Self {
        Formula::Since(Box::new(f), Box::new(g))
    }

    pub fn until(f: Formula, g: Formula) -> Self {
        Formula::Until(Box::new(f), Box::new(g))
    }

    /// `MOD(m, r)` with the residue reduced modulo `m`.
    pub fn modulo(modulus: usize, residue: usize) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("MOD requires m > 0".into()));
        }
        Ok(Formula::Mod {
            modulus,
            residue: residue % modulus,
        })
    }

    /// Disjunction of a non-empty sequence, folded to the left.
    pub fn disjunction(parts: impl IntoIterator<Item = Formula>) -> Option<Self> {
        parts.into_iter().reduce(Formula::or)
    }

    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Option<Self> {
        parts.into_iter().reduce(Formula::and)
    }

    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            Top | Bot | Atom(_) | Mod { .. } => vec![],
            Not(f) | Yesterday(f) | YesterdayWithin(_, f) | YesterdayStar(f) | Past(f) => vec![f],
            And(f, g) | Or(f, g) | Since(f, g) | Until(f, g) => vec![f, g],
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    /// Nesting depth of temporal operators. `Y^k` and `Ystar` count as one
    /// operator each; `MOD` is a position predicate of depth 0.
    pub fn operator_depth(&self) -> usize {
        use Formula::*;
        match self {
            Top | Bot | Atom(_) | Mod { .. } => 0,
            Not(f) => f.operator_depth(),
            And(f, g) | Or(f, g) => f.operator_depth().max(g.operator_depth()),
            Yesterday(f) | YesterdayWithin(_, f) | YesterdayStar(f) | Past(f) => {
                1 + f.operator_depth()
            }
            Since(f, g) | Until(f, g) => 1 + f.operator_depth().max(g.operator_depth()),
        }
    }

    pub fn is_temporal(&self) -> bool {
        use Formula::*;
        matches!(
            self,
            Yesterday(_) | YesterdayWithin(..) | YesterdayStar(_) | Past(_) | Since(..) | Until(..)
        )
    }

    /// Pre-order walk over all nodes.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Formula)) {
        visit(self);
        for c in self.children() {
            c.walk(visit);
        }
    }

    pub fn any(&self, mut pred: impl FnMut(&Formula) -> bool) -> bool {
        let mut found = false;
        self.walk(&mut |f| found |= pred(f));
        found
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            if let Formula::Atom(a) = f {
                out.insert(a.as_str());
            }
        });
        out
    }

    /// Fails with [`Error::UnknownToken`] if an atom is outside `alphabet`.
    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        match self.atoms().into_iter().find(|a| alphabet.index_of(a).is_none()) {
            Some(a) => Err(Error::UnknownToken(a.to_owned())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Formula {
    /// Canonical form: binary operators are always parenthesized, prefix
    /// operators are separated from their operand by a space.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        match self {
            Top => write!(f, "true"),
            Bot => write!(f, "false"),
            Atom(a) => write!(f, "{a}"),
            Not(g) => write!(f, "!{g}"),
            And(g, h) => write!(f, "({g} & {h})"),
            Or(g, h) => write!(f, "({g} | {h})"),
            Yesterday(g) => write!(f, "Y {g}"),
            YesterdayWithin(k, g) => write!(f, "Y^{k} {g}"),
            YesterdayStar(g) => write!(f, "Ystar {g}"),
            Past(g) => write!(f, "P {g}"),
            Since(g, h) => write!(f, "({g} S {h})"),
            Until(g, h) => write!(f, "({g} U {h})"),
            Mod { modulus, residue } => write!(f, "MOD({modulus},{residue})"),
        }
    }
}
