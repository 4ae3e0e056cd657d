//! Transition semigroups of complete DFAs and the algebraic decision
//! procedures for definiteness, local R-triviality and aperiodicity.
//!
//! The syntactic semigroup of a regular language is identified with the
//! transition semigroup of its minimal complete DFA: the transformations
//! induced by non-empty words. Products act on the right, so `x · y` is
//! "apply `x`, then `y`", matching `t_u · t_v = t_{uv}`.

mod decide;
mod semigroup;

pub use decide::{
    definite_degree_by_suffixes, find_forbidden_config, is_aperiodic, is_definite,
    is_locally_r_trivial, is_nonpermutational, ConfigWitness, PeriodWitness, PermutationWitness,
    RClassWitness, RightZeroWitness, Verdict,
};
pub use semigroup::{
    transition_semigroup, transition_semigroup_with_budget, Semigroup, Transformation,
    DEFAULT_ELEMENT_BUDGET,
};
