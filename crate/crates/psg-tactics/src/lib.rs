//! Tactics lifted to goal nodes, environment tactics, conversions, and the
//! tactic libraries used by the shipped strategies.

pub mod args;
pub mod conv;
pub mod env_tactics;
pub mod error;
pub mod morphism;
pub mod patterns;
pub mod plan;
pub mod registry;
pub mod taut;
pub mod tacticals;

pub use args::{resolve_args, resolve_env_args, ArgData};
pub use conv::Conv;
pub use error::{Result, TacError};
pub use plan::{apply_env_tactic, apply_tactic, label_text, lift_tactic, AppF, Outcome, PNode, PPlan};
pub use registry::{Entry, Registry, TacticInfo, PLACEHOLDERS};
