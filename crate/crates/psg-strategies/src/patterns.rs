//! Instantiating the reusable patterns.

use std::collections::{BTreeMap, BTreeSet};

use psg_psgraph::{Bundle, BundleDoc};
use psg_tactics::PLACEHOLDERS;

use crate::{Result, StrategyError};

pub const PATTERNS: [&str; 3] = ["LEMMA_THEN1", "CASE_THENLIST", "DROP_ASM"];

fn reachable(doc: &BundleDoc, root: &str) -> BTreeSet<String> {
    let mut seen = BTreeSet::new();
    let mut todo = vec![root.to_string()];
    while let Some(g) = todo.pop() {
        if !seen.insert(g.clone()) {
            continue;
        }
        if let Some(gd) = doc.graphs.get(&g) {
            todo.extend(gd.nodes.iter().filter_map(|n| n.graph.clone()));
        }
    }
    seen
}

/// A bundle whose main graph is `pattern`, keeping only the graphs it uses,
/// with every placeholder tactic replaced according to `repl`.
pub fn instantiate(bundle: &Bundle, pattern: &str, repl: &[(&str, &str)]) -> Result<Bundle> {
    let src = bundle.doc();
    if !src.graphs.contains_key(pattern) {
        return Err(StrategyError::UnknownPattern(pattern.to_string()));
    }
    let map: BTreeMap<&str, &str> = repl.iter().copied().collect();
    if let Some(k) = map.keys().find(|k| !PLACEHOLDERS.contains(k)) {
        return Err(StrategyError::NotPlaceholder(k.to_string()));
    }
    let keep = reachable(src, pattern);
    let mut doc = src.clone();
    doc.main = pattern.to_string();
    doc.graphs.retain(|name, _| keep.contains(name));
    for g in doc.graphs.values_mut() {
        for n in &mut g.nodes {
            let Some(t) = n.tactic.as_deref() else { continue };
            if PLACEHOLDERS.contains(&t) {
                let to = map.get(t).ok_or_else(|| StrategyError::MissingReplacement(t.to_string()))?;
                n.tactic = Some(to.to_string());
            }
        }
    }
    Ok(Bundle::from_doc(doc, bundle.registry_arc())?)
}
