//! Goal types: a small logic-programming language of predicates on goals.

pub mod ast;
pub mod builtins;
pub mod env;
pub mod error;
pub mod eval;
pub mod library;
pub mod parse;

pub use ast::{GoalType, GtArg, GtDefs, Literal, Rule};
pub use builtins::builtins;
pub use env::{Env, EnvVal, Focus, FocusAtom, GtEnv};
pub use error::{GtError, Result};
pub use eval::{eval_goaltype, inst_gtenv, lookup, res_gtenv, satisfies, Atoms, Evaluator, GoalCtx, Resolved};
pub use parse::{parse_defs, parse_goaltype, parse_goaltype_schema};
