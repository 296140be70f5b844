use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GtError {
    #[error("goal type parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("goal type variable `{0}` is not allowed in a wire goal type")]
    GVarOnWire(String),
    #[error("unknown goal type predicate `{0}`")]
    UnknownPredicate(String),
    #[error("goal type `{pred}` expects {expected} argument(s), got {got}")]
    Arity { pred: String, expected: usize, got: usize },
    #[error("goal type evaluation exceeded depth {0}")]
    DepthExceeded(usize),
}

pub type Result<T> = std::result::Result<T, GtError>;
