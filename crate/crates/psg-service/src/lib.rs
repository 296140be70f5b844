//! Session service for the evaluation engine, speaking the `psg/1`
//! line-delimited JSON protocol over stdio or a local TCP socket.

pub mod server;
pub mod session;
pub mod snapshot;

use psg_psgraph::PsgError;
use thiserror::Error;

pub use server::{serve_lines, serve_tcp, Service};
pub use session::{Command, Session};
pub use snapshot::{GoalView, GraphView, Snapshot, WireView};

pub const VERSION: &str = "psg/1";

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("{0}")]
    BadRequest(String),
    #[error("unknown session `{0}`")]
    UnknownSession(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    InvalidInMode(String),
    #[error("graph edits are only allowed before init or after reset")]
    EditWhileRunning,
    #[error(transparent)]
    Graph(PsgError),
}

impl ServiceError {
    /// The `err` code sent on the wire.
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::BadRequest(_) => "bad-request",
            ServiceError::UnknownSession(_) => "unknown-session",
            ServiceError::Parse(_) => "parse",
            ServiceError::InvalidInMode(_) => "invalid-in-mode",
            ServiceError::EditWhileRunning => "edit-while-running",
            ServiceError::Graph(_) => "graph",
        }
    }
}

impl From<PsgError> for ServiceError {
    fn from(e: PsgError) -> ServiceError {
        match e {
            PsgError::Invalid(m) => ServiceError::InvalidInMode(m),
            other => ServiceError::Graph(other),
        }
    }
}

pub type Result<T> = std::result::Result<T, ServiceError>;
