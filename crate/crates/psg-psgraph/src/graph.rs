//! Strategy bundles: the JSON graph format, validation and breakpoint splicing.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use psg_goaltype::{parse_defs, parse_goaltype, Atoms, Focus, GoalType, GtDefs};
use psg_kernel::parse_term;
use psg_tactics::{ArgData, Registry};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{schema, PsgError, Result};

fn any_gt() -> String {
    "any".to_string()
}

fn is_any(s: &str) -> bool {
    s.trim() == "any"
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub id: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tactic: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub args: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireDoc {
    pub id: String,
    pub src: String,
    pub dst: String,
    #[serde(default = "any_gt", skip_serializing_if = "is_any")]
    pub goaltype: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    #[serde(default)]
    pub nodes: Vec<NodeDoc>,
    #[serde(default)]
    pub wires: Vec<WireDoc>,
    #[serde(default)]
    pub inputs: usize,
    #[serde(default)]
    pub outputs: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub doc: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDoc {
    pub graphs: BTreeMap<String, GraphDoc>,
    pub main: String,
    #[serde(default)]
    pub goaltypes: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub doc: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Port {
    In(usize),
    Out(usize),
    Node(String),
}

impl Port {
    fn parse(s: &str) -> Result<Port> {
        let idx = |r: &str| r.parse::<usize>().map_err(|_| PsgError::Schema(format!("bad port `{s}`")));
        if let Some(r) = s.strip_prefix("in:") {
            Ok(Port::In(idx(r)?))
        } else if let Some(r) = s.strip_prefix("out:") {
            Ok(Port::Out(idx(r)?))
        } else if s.is_empty() || s.contains(':') && !s.starts_with(BP_PREFIX) {
            schema(format!("bad port `{s}`"))
        } else {
            Ok(Port::Node(s.to_string()))
        }
    }

    pub fn node(&self) -> Option<&str> {
        match self {
            Port::Node(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Port::In(i) => write!(f, "in:{i}"),
            Port::Out(j) => write!(f, "out:{j}"),
            Port::Node(n) => f.write_str(n),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NodeKind {
    Atomic { tactic: String, args: Vec<ArgData> },
    /// args are the `?`-variables scoping the nested environment
    Graph { graph: String, args: Vec<String> },
    Identity,
    Breakpoint,
}

impl NodeKind {
    pub fn kind_name(&self) -> &'static str {
        match self {
            NodeKind::Atomic { .. } => "atomic",
            NodeKind::Graph { .. } => "graph",
            NodeKind::Identity => "identity",
            NodeKind::Breakpoint => "breakpoint",
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let call = |f: &mut fmt::Formatter<'_>, name: &str, args: Vec<String>| {
            if args.is_empty() {
                f.write_str(name)
            } else {
                write!(f, "{name}({})", args.join(", "))
            }
        };
        match self {
            NodeKind::Atomic { tactic, args } => call(f, tactic, args.iter().map(|a| a.to_string()).collect()),
            NodeKind::Graph { graph, args } => call(f, graph, args.clone()),
            NodeKind::Identity => f.write_str("identity"),
            NodeKind::Breakpoint => f.write_str("breakpoint"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Wire {
    pub id: String,
    pub src: Port,
    pub dst: Port,
    pub gt: GoalType,
}

#[derive(Clone, Debug)]
pub struct OpenGraph {
    pub name: String,
    pub nodes: BTreeMap<String, NodeKind>,
    /// declaration order; this is also the scheduling and branching order
    pub wires: Vec<Wire>,
    pub inputs: usize,
    pub outputs: usize,
    wire_ix: HashMap<String, usize>,
}

impl OpenGraph {
    pub fn wire(&self, id: &str) -> Option<&Wire> {
        self.wire_ix.get(id).map(|&i| &self.wires[i])
    }

    pub fn wire_index(&self, id: &str) -> Option<usize> {
        self.wire_ix.get(id).copied()
    }

    /// Wires leaving `node`, in declaration order.
    pub fn out_wires(&self, node: &str) -> Vec<&Wire> {
        self.wires.iter().filter(|w| w.src.node() == Some(node)).collect()
    }

    /// Wires fed by boundary inputs, in declaration order.
    pub fn input_wires(&self) -> Vec<&Wire> {
        self.wires.iter().filter(|w| matches!(w.src, Port::In(_))).collect()
    }
}

pub fn arg_of_json(v: &Value) -> Result<ArgData> {
    let bad = || PsgError::Arg(format!("cannot read argument {v}"));
    let term = |s: &Value| -> Result<psg_kernel::Term> {
        let s = s.as_str().ok_or_else(bad)?;
        parse_term(s).map_err(|e| PsgError::Arg(format!("term `{s}`: {e}")))
    };
    let focus = |s: &Value| -> Result<Focus> {
        let s = s.as_str().ok_or_else(bad)?;
        Focus::parse(s).ok_or_else(|| PsgError::Arg(format!("bad focus `{s}`")))
    };
    match v {
        Value::String(s) if s.starts_with('?') && s.len() > 1 => Ok(ArgData::Var(s.clone())),
        Value::String(s) => Ok(ArgData::Name(s.clone())),
        Value::Object(m) if m.len() == 1 => {
            let (k, x) = m.iter().next().expect("one entry");
            let list = || x.as_array().ok_or_else(bad);
            match k.as_str() {
                "term" => Ok(ArgData::Trms(vec![term(x)?])),
                "terms" => Ok(ArgData::Trms(list()?.iter().map(term).collect::<Result<_>>()?)),
                "str" => Ok(ArgData::Str(x.as_str().ok_or_else(bad)?.to_string())),
                "focus" => Ok(ArgData::Focus(focus(x)?)),
                "focus_list" => Ok(ArgData::FocusList(list()?.iter().map(focus).collect::<Result<_>>()?)),
                "names" => Ok(ArgData::Names(
                    list()?.iter().map(|n| n.as_str().map(str::to_string).ok_or_else(bad)).collect::<Result<_>>()?,
                )),
                _ => Err(bad()),
            }
        }
        _ => Err(bad()),
    }
}

pub fn arg_to_json(a: &ArgData) -> Value {
    match a {
        ArgData::Var(v) | ArgData::Name(v) => json!(v),
        ArgData::Trms(ts) if ts.len() == 1 => json!({ "term": ts[0].to_string() }),
        ArgData::Trms(ts) => json!({ "terms": ts.iter().map(|t| t.to_string()).collect::<Vec<_>>() }),
        ArgData::Str(s) => json!({ "str": s }),
        ArgData::Focus(f) => json!({ "focus": f.to_string() }),
        ArgData::FocusList(fs) => json!({ "focus_list": fs.iter().map(|f| f.to_string()).collect::<Vec<_>>() }),
        ArgData::Names(ns) => json!({ "names": ns }),
    }
}

/// A graph edit, applied to the document and revalidated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Edit {
    AddNode { graph: String, node: NodeDoc },
    AddWire { graph: String, wire: WireDoc },
    /// removes a node (with its wires) or a wire
    Delete { graph: String, id: String },
    SetGoaltype { graph: String, wire: String, goaltype: String },
    SetBoundary { graph: String, inputs: usize, outputs: usize },
    AddGraph { name: String },
}

/// A validated strategy: graphs, goal-type definitions and the tactic registry.
#[derive(Clone)]
pub struct Bundle {
    doc: BundleDoc,
    graphs: BTreeMap<String, OpenGraph>,
    defs: Arc<GtDefs>,
    registry: Arc<Registry>,
}

impl fmt::Debug for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Bundle").field("main", &self.doc.main).field("graphs", &self.graphs.keys()).finish()
    }
}

const BP_PREFIX: &str = "bp:";
const BP_SUFFIX: &str = "#bp";

impl Bundle {
    pub fn load_str(text: &str, registry: Arc<Registry>) -> Result<Bundle> {
        let doc: BundleDoc = serde_json::from_str(text).map_err(|e| PsgError::Schema(e.to_string()))?;
        Bundle::from_doc(doc, registry)
    }

    /// Full validation: every boundary port is used exactly once.
    pub fn from_doc(doc: BundleDoc, registry: Arc<Registry>) -> Result<Bundle> {
        let b = Bundle::build(doc, registry)?;
        b.check_complete()?;
        Ok(b)
    }

    /// Validation tolerating unused boundary ports, for graphs under construction.
    pub fn from_doc_partial(doc: BundleDoc, registry: Arc<Registry>) -> Result<Bundle> {
        Bundle::build(doc, registry)
    }

    fn build(doc: BundleDoc, registry: Arc<Registry>) -> Result<Bundle> {
        let mut defs = psg_goaltype::library::library();
        defs.extend(parse_defs(&doc.goaltypes).map_err(PsgError::GoalTypes)?);
        let atoms = registry.atoms();
        if let Some(p) = psg_goaltype::parse::undefined_predicates(&defs, &|n| atoms.contains(n)).into_iter().next() {
            return Err(PsgError::UnknownPredicate(p));
        }
        if let Some((n, _)) = defs.atomics.iter().find(|(n, _)| !atoms.contains(n)) {
            return Err(PsgError::UnknownPredicate(n.clone()));
        }
        if !doc.graphs.contains_key(&doc.main) {
            return schema(format!("main graph `{}` is not defined", doc.main));
        }
        let mut graphs = BTreeMap::new();
        for (name, g) in &doc.graphs {
            graphs.insert(name.clone(), build_graph(name, g, &doc, &defs, atoms, &registry)?);
        }
        Ok(Bundle { doc, graphs, defs: Arc::new(defs), registry })
    }

    pub fn check_complete(&self) -> Result<()> {
        for g in self.graphs.values() {
            for i in 0..g.inputs {
                if !g.wires.iter().any(|w| w.src == Port::In(i)) {
                    return schema(format!("graph `{}`: input {i} is not connected", g.name));
                }
            }
            for j in 0..g.outputs {
                if !g.wires.iter().any(|w| w.dst == Port::Out(j)) {
                    return schema(format!("graph `{}`: output {j} is not connected", g.name));
                }
            }
        }
        Ok(())
    }

    pub fn doc(&self) -> &BundleDoc {
        &self.doc
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.doc).expect("document serialises")
    }

    pub fn main(&self) -> &str {
        &self.doc.main
    }

    pub fn main_graph(&self) -> &OpenGraph {
        &self.graphs[&self.doc.main]
    }

    pub fn graph(&self, name: &str) -> Option<&OpenGraph> {
        self.graphs.get(name)
    }

    pub fn graphs(&self) -> impl Iterator<Item = &OpenGraph> {
        self.graphs.values()
    }

    pub fn defs(&self) -> &GtDefs {
        &self.defs
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn registry_arc(&self) -> Arc<Registry> {
        self.registry.clone()
    }

    pub fn atoms(&self) -> &Atoms {
        self.registry.atoms()
    }

    /// `graph/wire` or a bare wire id, searched in graph-name order.
    pub fn find_wire(&self, spec: &str) -> Result<(String, String)> {
        if let Some((g, w)) = spec.split_once('/') {
            if self.graphs.get(g).and_then(|og| og.wire(w)).is_some() {
                return Ok((g.to_string(), w.to_string()));
            }
            return Err(PsgError::UnknownWire(spec.to_string()));
        }
        // main first, so bare ids in single-graph strategies do the obvious thing
        let order = std::iter::once(self.main()).chain(self.graphs.keys().map(String::as_str).filter(|g| *g != self.main()));
        for g in order {
            if self.graphs[g].wire(spec).is_some() {
                return Ok((g.to_string(), spec.to_string()));
            }
        }
        Err(PsgError::UnknownWire(spec.to_string()))
    }

    /// Breakpoint positions as `(graph, wire)` of the wire in front of the breakpoint.
    pub fn breakpoints(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for g in self.graphs.values() {
            for (id, k) in &g.nodes {
                if *k == NodeKind::Breakpoint {
                    if let Some(w) = id.strip_prefix(BP_PREFIX) {
                        out.push((g.name.clone(), w.to_string()));
                    }
                }
            }
        }
        out
    }

    /// Splice a breakpoint into a wire, or remove the one already there.
    /// Returns the new bundle and whether a breakpoint is now present.
    pub fn toggle_breakpoint(&self, spec: &str) -> Result<(Bundle, bool)> {
        let (g, w) = self.find_wire(spec)?;
        let base = w.strip_suffix(BP_SUFFIX).unwrap_or(&w).to_string();
        let mut doc = self.doc.clone();
        let gd = doc.graphs.get_mut(&g).expect("graph exists");
        let node_id = format!("{BP_PREFIX}{base}");
        let tail_id = format!("{base}{BP_SUFFIX}");
        let present = gd.nodes.iter().any(|n| n.id == node_id);
        if present {
            let tail = gd.wires.iter().position(|x| x.id == tail_id).expect("spliced wire has a tail");
            let dst = gd.wires.remove(tail).dst;
            gd.nodes.retain(|n| n.id != node_id);
            gd.wires.iter_mut().find(|x| x.id == base).expect("wire exists").dst = dst;
        } else {
            let i = gd.wires.iter().position(|x| x.id == base).expect("wire exists");
            let orig = gd.wires[i].clone();
            gd.wires[i].dst = node_id.clone();
            gd.wires.insert(
                i + 1,
                WireDoc { id: tail_id, src: node_id.clone(), dst: orig.dst, goaltype: orig.goaltype },
            );
            gd.nodes.push(NodeDoc { id: node_id, kind: "breakpoint".into(), tactic: None, graph: None, args: vec![] });
        }
        Ok((Bundle::build(doc, self.registry.clone())?, !present))
    }

    /// The wire a goal should sit on once the breakpoint on `wire` is removed.
    pub fn unspliced_wire(wire: &str) -> Option<&str> {
        wire.strip_suffix(BP_SUFFIX)
    }

    pub fn edit(&self, e: &Edit) -> Result<Bundle> {
        fn graph_mut<'a>(doc: &'a mut BundleDoc, g: &str) -> Result<&'a mut GraphDoc> {
            doc.graphs.get_mut(g).ok_or_else(|| PsgError::Invalid(format!("no graph `{g}`")))
        }
        let mut doc = self.doc.clone();
        match e {
            Edit::AddNode { graph, node } => graph_mut(&mut doc, graph)?.nodes.push(node.clone()),
            Edit::AddWire { graph, wire } => graph_mut(&mut doc, graph)?.wires.push(wire.clone()),
            Edit::Delete { graph, id } => {
                let gd = graph_mut(&mut doc, graph)?;
                let (n0, w0) = (gd.nodes.len(), gd.wires.len());
                gd.nodes.retain(|n| n.id != *id);
                if gd.nodes.len() < n0 {
                    gd.wires.retain(|w| w.src != *id && w.dst != *id);
                } else {
                    gd.wires.retain(|w| w.id != *id);
                }
                if gd.nodes.len() == n0 && gd.wires.len() == w0 {
                    return Err(PsgError::Invalid(format!("graph `{graph}` has no node or wire `{id}`")));
                }
            }
            Edit::SetGoaltype { graph, wire, goaltype } => {
                let gd = graph_mut(&mut doc, graph)?;
                let w = gd.wires.iter_mut().find(|w| w.id == *wire).ok_or_else(|| PsgError::UnknownWire(wire.clone()))?;
                w.goaltype = goaltype.clone();
            }
            Edit::SetBoundary { graph, inputs, outputs } => {
                let gd = graph_mut(&mut doc, graph)?;
                gd.inputs = *inputs;
                gd.outputs = *outputs;
            }
            Edit::AddGraph { name } => {
                if doc.graphs.contains_key(name) {
                    return Err(PsgError::Invalid(format!("graph `{name}` already exists")));
                }
                doc.graphs.insert(name.clone(), GraphDoc { nodes: vec![], wires: vec![], inputs: 0, outputs: 0, doc: None });
            }
        }
        Bundle::build(doc, self.registry.clone())
    }
}

fn build_graph(
    name: &str,
    g: &GraphDoc,
    doc: &BundleDoc,
    defs: &GtDefs,
    atoms: &Atoms,
    registry: &Registry,
) -> Result<OpenGraph> {
    let mut nodes = BTreeMap::new();
    for n in &g.nodes {
        if n.id.is_empty() || n.id.contains(':') && !n.id.starts_with(BP_PREFIX) {
            return schema(format!("graph `{name}`: bad node id `{}`", n.id));
        }
        let kind = match n.kind.as_str() {
            "atomic" => {
                let tactic = n.tactic.clone().ok_or_else(|| PsgError::Schema(format!("node `{}` needs a tactic", n.id)))?;
                if !registry.contains(&tactic) {
                    return Err(PsgError::UnknownTactic { graph: name.into(), node: n.id.clone(), tactic });
                }
                let args = n.args.iter().map(arg_of_json).collect::<Result<_>>()?;
                NodeKind::Atomic { tactic, args }
            }
            "graph" => {
                let target = n.graph.clone().ok_or_else(|| PsgError::Schema(format!("node `{}` needs a graph", n.id)))?;
                if !doc.graphs.contains_key(&target) {
                    return Err(PsgError::UnknownGraph { graph: name.into(), node: n.id.clone(), target });
                }
                let mut args = Vec::new();
                for a in &n.args {
                    match arg_of_json(a)? {
                        ArgData::Var(v) => args.push(v),
                        other => {
                            return Err(PsgError::Arg(format!(
                                "graph tactic `{}` takes ?-variables, got {other}",
                                n.id
                            )))
                        }
                    }
                }
                NodeKind::Graph { graph: target, args }
            }
            "identity" => NodeKind::Identity,
            "breakpoint" => NodeKind::Breakpoint,
            "goal" => return Err(PsgError::GoalNode { graph: name.into(), node: n.id.clone() }),
            k => return schema(format!("graph `{name}`: node `{}` has unknown kind `{k}`", n.id)),
        };
        if nodes.insert(n.id.clone(), kind).is_some() {
            return schema(format!("graph `{name}`: duplicate node id `{}`", n.id));
        }
    }
    let mut wires = Vec::new();
    let mut wire_ix = HashMap::new();
    let mut used_in = BTreeSet::new();
    let mut used_out = BTreeSet::new();
    for w in &g.wires {
        let src = Port::parse(&w.src)?;
        let dst = Port::parse(&w.dst)?;
        for p in [&src, &dst] {
            if let Port::Node(n) = p {
                if !nodes.contains_key(n) {
                    return schema(format!("graph `{name}`, wire `{}`: no node `{n}`", w.id));
                }
            }
        }
        match src {
            Port::Out(_) => return schema(format!("graph `{name}`, wire `{}`: source is an output", w.id)),
            Port::In(i) if i >= g.inputs || !used_in.insert(i) => {
                return schema(format!("graph `{name}`, wire `{}`: input {i} is out of range or reused", w.id))
            }
            _ => {}
        }
        match dst {
            Port::In(_) => return schema(format!("graph `{name}`, wire `{}`: destination is an input", w.id)),
            Port::Out(j) if j >= g.outputs || !used_out.insert(j) => {
                return schema(format!("graph `{name}`, wire `{}`: output {j} is out of range or reused", w.id))
            }
            _ => {}
        }
        let gt = parse_goaltype(&w.goaltype)
            .map_err(|err| PsgError::WireGoalType { graph: name.into(), wire: w.id.clone(), err })?;
        for c in &gt.clauses {
            if !defs.defines(&c.pred) && !atoms.contains(&c.pred) {
                return Err(PsgError::WireGoalType {
                    graph: name.into(),
                    wire: w.id.clone(),
                    err: psg_goaltype::GtError::UnknownPredicate(c.pred.clone()),
                });
            }
        }
        if wire_ix.insert(w.id.clone(), wires.len()).is_some() {
            return schema(format!("graph `{name}`: duplicate wire id `{}`", w.id));
        }
        wires.push(Wire { id: w.id.clone(), src, dst, gt });
    }
    for (id, k) in &nodes {
        if *k == NodeKind::Breakpoint {
            let ins = wires.iter().filter(|w| w.dst.node() == Some(id)).count();
            let outs = wires.iter().filter(|w| w.src.node() == Some(id)).count();
            if ins != 1 || outs != 1 {
                return schema(format!("graph `{name}`: breakpoint `{id}` needs one wire in and one out"));
            }
        }
    }
    Ok(OpenGraph { name: name.to_string(), nodes, wires, inputs: g.inputs, outputs: g.outputs, wire_ix })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg() -> Arc<Registry> {
        Arc::new(Registry::standard())
    }

    const LOOP: &str = r#"{
      "main": "m",
      "graphs": {"m": {"inputs": 1, "outputs": 0,
        "nodes": [{"id": "n", "kind": "atomic", "tactic": "taut_strip_tac"}],
        "wires": [{"id": "in", "src": "in:0", "dst": "n"}, {"id": "back", "src": "n", "dst": "n"}]}}
    }"#;

    #[test]
    fn feedback_loop_loads() {
        let b = Bundle::load_str(LOOP, reg()).unwrap();
        let g = b.main_graph();
        assert_eq!(g.nodes.len(), 1);
        assert_eq!(g.wires.len(), 2);
        assert!(g.wire("back").unwrap().gt.is_any());
    }

    #[test]
    fn rejections() {
        let cases = [
            (LOOP.replace("taut_strip_tac", "nope_tac"), "nope_tac"),
            (LOOP.replace("\"atomic\", \"tactic\": \"taut_strip_tac\"", "\"goal\""), "goal nodes"),
            (LOOP.replace("\"dst\": \"n\"}]", "\"dst\": \"n\", \"goaltype\": \"c(X)\"}]"), "X"),
            (LOOP.replace("\"dst\": \"n\"}]", "\"dst\": \"n\", \"goaltype\": \"frob()\"}]"), "frob"),
            (LOOP.replace("\"main\": \"m\"", "\"main\": \"q\""), "q"),
            (LOOP.replace("\"src\": \"in:0\"", "\"src\": \"in:1\""), "input 1"),
        ];
        for (doc, needle) in cases {
            let e = Bundle::load_str(&doc, reg()).unwrap_err().to_string();
            assert!(e.contains(needle), "{e} lacks {needle}");
        }
    }

    #[test]
    fn unused_input_is_partial_only() {
        let doc = LOOP.replace("\"inputs\": 1", "\"inputs\": 2");
        assert!(Bundle::load_str(&doc, reg()).is_err());
        let d: BundleDoc = serde_json::from_str(&doc).unwrap();
        assert!(Bundle::from_doc_partial(d, reg()).is_ok());
    }

    #[test]
    fn breakpoint_splice_roundtrip() {
        let b = Bundle::load_str(LOOP, reg()).unwrap();
        let (b2, on) = b.toggle_breakpoint("back").unwrap();
        assert!(on);
        let g = b2.main_graph();
        assert_eq!(g.wires.iter().map(|w| w.id.as_str()).collect::<Vec<_>>(), ["in", "back", "back#bp"]);
        assert_eq!(g.wire("back").unwrap().dst, Port::Node("bp:back".into()));
        assert_eq!(b2.breakpoints(), vec![("m".to_string(), "back".to_string())]);
        let (b3, on) = b2.toggle_breakpoint("back#bp").unwrap();
        assert!(!on);
        assert_eq!(b3.doc(), b.doc());
    }

    #[test]
    fn args_roundtrip() {
        for v in [
            json!("?g"),
            json!("hyps"),
            json!({"term": "A /\\ B"}),
            json!({"terms": ["A", "B"]}),
            json!({"str": "conj"}),
            json!({"focus": "RAND_C o RATOR_C"}),
            json!({"focus_list": ["RIGHT_C"]}),
            json!({"names": ["a", "b"]}),
        ] {
            assert_eq!(arg_to_json(&arg_of_json(&v).unwrap()), v);
        }
        assert!(arg_of_json(&json!({"term": "A /\\"})).is_err());
        assert!(arg_of_json(&json!(3)).is_err());
    }

    #[test]
    fn edits_revalidate() {
        let b = Bundle::load_str(LOOP, reg()).unwrap();
        let e = Edit::SetGoaltype { graph: "m".into(), wire: "back".into(), goaltype: "c(conj)".into() };
        let b2 = b.edit(&e).unwrap();
        assert_eq!(b2.main_graph().wire("back").unwrap().gt.to_string(), "c(conj)");
        let bad = Edit::SetGoaltype { graph: "m".into(), wire: "back".into(), goaltype: "c(".into() };
        assert!(b.edit(&bad).is_err());
        let del = b.edit(&Edit::Delete { graph: "m".into(), id: "n".into() }).unwrap();
        assert!(del.main_graph().wires.is_empty());
        let e: Edit = serde_json::from_value(json!({"op": "delete", "graph": "m", "id": "back"})).unwrap();
        assert_eq!(b.edit(&e).unwrap().main_graph().wires.len(), 1);
    }
}
