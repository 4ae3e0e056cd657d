//! Past-time linear temporal logic over finite strings.
//!
//! Formulas are evaluated at positions `1..=N+1` of a string of length `N`;
//! a string is accepted when the formula holds at `N+1`, one step past the
//! last token. Atoms are false outside `1..=N`, and past operators never look
//! at positions before 1.

mod eval;
mod formula;
mod parser;
pub mod random;
mod rewrite;

pub use eval::{accepts, evaluate, truth_table, EvalPoint};
pub use formula::Formula;
pub use parser::parse_formula;
pub use rewrite::{expand_bounded, locally_testable_formula, rewrite_with_mod, LocalKind};
