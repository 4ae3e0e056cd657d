//! Past-time temporal logic over finite strings, the automata and semigroup
//! machinery that decides which logic fragment defines a regular language, and
//! a compiler from formulas to fixed-precision transformers whose attention
//! masks mirror the operators they realize.
//!
//! Module map:
//!
//! - [`logic`]: formula AST, parser, evaluator, rewrites.
//! - [`automata`]: complete DFAs, minimization, formula-to-DFA, slice sampling.
//! - [`algebra`]: transition semigroups and the fragment decision procedures.
//! - [`classifier`]: fragment reports for languages and mask requirements for formulas.
//! - [`attention`]: fixed-precision arithmetic and the masked transformer forward pass.
//! - [`compiler`]: formula to transformer compilation and oracle verification.
//! - [`datagen`]: benchmark language registry and JSONL dataset generation.
//! - [`suites`]: seeded agreement suites shared by the CLI and the acceptance tests.

pub mod algebra;
pub mod alphabet;
pub mod attention;
pub mod automata;
pub mod classifier;
pub mod compiler;
pub mod datagen;
mod error;
pub mod logic;
pub mod suites;

pub use alphabet::{Alphabet, Word};
pub use error::{Error, Result};
