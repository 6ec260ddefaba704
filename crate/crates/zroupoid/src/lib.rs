//! Workbench for finite implication zroupoids: algebras `<A; ->, 0>` whose
//! operation satisfies the defining identity
//! `(x -> y) -> z = ((z' -> x) -> (y -> z)')'` together with `0'' = 0`,
//! writing `t'` for `t -> 0`.
//!
//! The crate provides
//! - a term and statement language with a parser and printer ([`term`]),
//! - finite operation tables with exhaustive identity and quasi-identity
//!   checking and variety membership ([`algebra`]),
//! - the derived order `x ⊑ y iff (x -> y')' = x` with partial/total order
//!   reports ([`order`]),
//! - the interval construction of chain algebras on `[-n, m]` ([`chain`]),
//! - enumeration of small algebras up to isomorphism by pruned backtracking,
//!   independent of the interval construction ([`enumeration`]),
//! - a data-driven catalog of laws runnable over model universes
//!   ([`lemmas`]),
//! - and the `zroupoid` command-line tool ([`cli`]).

pub mod algebra;
pub mod chain;
pub mod cli;
pub mod enumeration;
pub mod lemmas;
pub mod order;
pub mod term;

pub use algebra::{AlgebraError, CheckResult, FiniteZroupoid, VarietyMembership, Verdict};
pub use chain::{build_chain, ChainSpec, DomainError};
pub use enumeration::{
    are_isomorphic, canonical_form, classify_chain, enumerate_chains, enumerate_i20, IsoResult,
};
pub use order::{is_chain, join, leq, meet, order_report, OrderReport};
pub use term::{parse_statement, parse_term, Identity, Statement, SyntaxError, Term};
