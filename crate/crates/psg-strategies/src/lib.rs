//! Shipped strategy graphs: the tautology checker in its successive
//! versions, the combinator translation, and reusable patterns.

pub mod morphism;
pub mod patterns;
pub mod taut;

use std::sync::{Arc, OnceLock};

use psg_psgraph::{Bundle, PsgError};
use psg_tactics::Registry;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StrategyError {
    #[error("unknown strategy `{0}`")]
    UnknownFixture(String),
    #[error("placeholder `{0}` has no replacement")]
    MissingReplacement(String),
    #[error("`{0}` is not a placeholder")]
    NotPlaceholder(String),
    #[error("unknown pattern `{0}`")]
    UnknownPattern(String),
    #[error("{0}")]
    Unexpected(String),
    #[error(transparent)]
    Graph(#[from] PsgError),
    #[error(transparent)]
    Kernel(#[from] psg_kernel::KernelError),
}

pub type Result<T> = std::result::Result<T, StrategyError>;

const FIXTURES: [(&str, &str); 10] = [
    ("taut_v1", include_str!("../../../fixtures/taut_v1.json")),
    ("taut_v2", include_str!("../../../fixtures/taut_v2.json")),
    ("taut_v3", include_str!("../../../fixtures/taut_v3.json")),
    ("taut_v4", include_str!("../../../fixtures/taut_v4.json")),
    ("taut_v5", include_str!("../../../fixtures/taut_v5.json")),
    ("taut_final", include_str!("../../../fixtures/taut_final.json")),
    ("morphism", include_str!("../../../fixtures/morphism.json")),
    ("patterns", include_str!("../../../fixtures/patterns.json")),
    ("lemma_log", include_str!("../../../fixtures/lemma_log.json")),
    ("demo", include_str!("../../../fixtures/demo.json")),
];

/// Names of the built-in strategies, in lineage order for the tautology ones.
pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// The standard registry, built once.
pub fn registry() -> Arc<Registry> {
    static REG: OnceLock<Arc<Registry>> = OnceLock::new();
    REG.get_or_init(|| Arc::new(Registry::standard())).clone()
}

pub fn load(name: &str) -> Result<Bundle> {
    let text = source(name).ok_or_else(|| StrategyError::UnknownFixture(name.to_string()))?;
    Ok(Bundle::load_str(text, registry())?)
}
