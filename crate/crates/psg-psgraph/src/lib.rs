//! Proof-strategy graphs and their evaluation.

pub mod error;
pub mod eval;
pub mod graph;
pub mod log;

pub use error::{PsgError, Result};
pub use eval::{Call, Config, EvalState, Frame, Mode, RunOutcome, Status, StepOutcome, Token};
pub use graph::{arg_of_json, arg_to_json, Bundle, BundleDoc, Edit, GraphDoc, NodeDoc, NodeKind, OpenGraph, Port, Wire, WireDoc};
pub use log::{filter, parse_tags, to_jsonl, LogEvent, Tag};
