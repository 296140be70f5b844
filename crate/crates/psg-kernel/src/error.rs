use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("type error: {0}")]
    Type(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("{rule}: {msg}")]
    Rule { rule: &'static str, msg: String },
    #[error("not a tautology: false when {0}")]
    NotTautology(String),
    #[error("too many propositional variables: {0} (limit 24)")]
    TooManyVars(usize),
    #[error("tactic failed: {0}")]
    Tactic(String),
    #[error("unknown goal label `{0}`")]
    UnknownLabel(String),
    #[error("{0}")]
    State(String),
}

pub type Result<T> = std::result::Result<T, KernelError>;

pub(crate) fn rule_err<T>(rule: &'static str, msg: impl Into<String>) -> Result<T> {
    Err(KernelError::Rule { rule, msg: msg.into() })
}
