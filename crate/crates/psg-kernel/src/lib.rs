//! A small LCF-style kernel over simply-typed lambda terms.

pub mod error;
pub mod goal;
pub mod parse;
pub mod print;
pub mod sig;
pub mod taut;
pub mod term;
pub mod thm;
pub mod ty;

pub use error::{KernelError, Result};
pub use goal::{parse_goal, proof, tactic, Goal, GoalState, Label, Proof, Tactic};
pub use parse::{parse_prop, parse_term, parse_term_with};
pub use term::{Term, TermKind, Var};
pub use thm::Thm;
pub use ty::Ty;
