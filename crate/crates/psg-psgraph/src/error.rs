use psg_goaltype::GtError;
use psg_kernel::KernelError;
use psg_tactics::TacError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PsgError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("graph `{graph}`: node `{node}` uses unknown tactic `{tactic}`")]
    UnknownTactic { graph: String, node: String, tactic: String },
    #[error("graph `{graph}`: node `{node}` refers to unknown graph `{target}`")]
    UnknownGraph { graph: String, node: String, target: String },
    #[error("graph `{graph}`: goal nodes cannot appear in a strategy (node `{node}`)")]
    GoalNode { graph: String, node: String },
    #[error("graph `{graph}`, wire `{wire}`: {err}")]
    WireGoalType { graph: String, wire: String, err: GtError },
    #[error("goal types: {0}")]
    GoalTypes(GtError),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("bad argument: {0}")]
    Arg(String),
    #[error("unknown wire `{0}`")]
    UnknownWire(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Tactic(#[from] TacError),
}

pub type Result<T> = std::result::Result<T, PsgError>;

pub(crate) fn schema<T>(msg: impl Into<String>) -> Result<T> {
    Err(PsgError::Schema(msg.into()))
}
