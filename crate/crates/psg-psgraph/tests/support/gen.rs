#![allow(dead_code)]

use rand::Rng;
use serde_json::json;

pub const TACTICS: [&str; 6] = ["conj_tac", "all_tac", "t_tac", "strip_imp_concl_tac", "concl_in_asms_tac", "ENV_all_asms"];
pub const GTS: [&str; 7] = ["any", "c(conj)", "!c(conj)", "c(implies)", "has_hyp(concl)", "c(true)", "!c(implies)"];

/// A small graph over a few tactics; `sub` is the only graph a nested node may call.
pub fn random_graph(rng: &mut impl Rng, allow_nested: bool) -> serde_json::Value {
    let n = rng.gen_range(1..=4);
    let mut nodes = vec![];
    for i in 0..n {
        let k = rng.gen_range(0..10);
        nodes.push(if k < 6 {
            let t = TACTICS[rng.gen_range(0..TACTICS.len())];
            let args = if t == "ENV_all_asms" { json!(["?a"]) } else { json!([]) };
            json!({"id": format!("n{i}"), "kind": "atomic", "tactic": t, "args": args})
        } else if k < 8 || !allow_nested {
            json!({"id": format!("n{i}"), "kind": "identity"})
        } else if k == 8 {
            json!({"id": format!("n{i}"), "kind": "graph", "graph": "sub", "args": ["?a"]})
        } else {
            json!({"id": format!("n{i}"), "kind": "breakpoint"})
        });
    }
    let gt = |rng: &mut dyn rand::RngCore| GTS[rng.gen_range(0..GTS.len())];
    let mut wires = vec![json!({"id": "w_in", "src": "in:0", "dst": "n0", "goaltype": "any"})];
    let mut out_used = false;
    for i in 0..n {
        let is_bp = nodes[i]["kind"] == "breakpoint";
        let outs = if is_bp { 1 } else { rng.gen_range(1..=2) };
        for k in 0..outs {
            let dst = if !out_used && (rng.gen_bool(0.4) || i == n - 1) {
                out_used = true;
                "out:0".to_string()
            } else {
                format!("n{}", rng.gen_range(0..n))
            };
            wires.push(json!({"id": format!("w{i}_{k}"), "src": format!("n{i}"), "dst": dst, "goaltype": gt(rng)}));
        }
    }
    // breakpoints take exactly one input
    let mut fixed = vec![];
    let mut seen_bp_in = std::collections::HashSet::new();
    for w in wires {
        let dst = w["dst"].as_str().unwrap().to_string();
        let to_bp = nodes.iter().any(|nd| nd["id"] == dst && nd["kind"] == "breakpoint");
        if to_bp && !seen_bp_in.insert(dst.clone()) {
            let mut w = w;
            w["dst"] = json!("n0");
            if nodes[0]["kind"] == "breakpoint" {
                continue;
            }
            fixed.push(w);
        } else {
            fixed.push(w);
        }
    }
    let outputs = usize::from(out_used);
    json!({"inputs": 1, "outputs": outputs, "nodes": nodes, "wires": fixed})
}

pub fn random_goal(rng: &mut impl Rng) -> String {
    fn f(rng: &mut impl Rng, d: u32) -> String {
        let atoms = ["A", "B", "T"];
        if d == 0 || rng.gen_ratio(1, 3) {
            return atoms[rng.gen_range(0..3)].to_string();
        }
        let (a, b) = (f(rng, d - 1), f(rng, d - 1));
        if rng.gen_bool(0.5) {
            format!("({a} /\\ {b})")
        } else {
            format!("({a} => {b})")
        }
    }
    let h = if rng.gen_bool(0.3) { "A " } else { "" };
    format!("{h}|- {}", f(rng, 3))
}
