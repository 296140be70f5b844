use psg_kernel::KernelError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TacError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("unknown tactic `{0}`")]
    UnknownTactic(String),
    #[error("unknown conversion `{0}`")]
    UnknownConv(String),
    #[error("environment variable `{0}` is unbound")]
    Unbound(String),
    #[error("{tactic}: {msg}")]
    Args { tactic: String, msg: String },
}

pub type Result<T> = std::result::Result<T, TacError>;

pub(crate) fn args_err<T>(tactic: &str, msg: impl Into<String>) -> Result<T> {
    Err(TacError::Args { tactic: tactic.to_string(), msg: msg.into() })
}

pub(crate) fn tac_err<T>(msg: impl Into<String>) -> psg_kernel::Result<T> {
    Err(KernelError::Tactic(msg.into()))
}
