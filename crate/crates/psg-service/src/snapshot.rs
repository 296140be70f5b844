//! Self-contained views of a session, as sent to clients.

use std::collections::BTreeMap;

use psg_psgraph::{filter, to_jsonl, Bundle, EvalState, LogEvent, Mode, NodeDoc, Status, Tag};
use psg_tactics::label_text;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// How many filtered log events a snapshot carries.
pub const RECENT_LOG: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WireView {
    pub id: String,
    pub src: String,
    pub dst: String,
    pub goaltype: String,
    /// labels of the goals sitting on this wire
    pub goals: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphView {
    pub name: String,
    pub inputs: usize,
    pub outputs: usize,
    pub nodes: Vec<NodeDoc>,
    pub wires: Vec<WireView>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoalView {
    pub pname: String,
    pub depth: usize,
    pub graph: String,
    pub wire: String,
    pub hyps: Vec<String>,
    pub concl: String,
    pub env: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub session: String,
    pub main: String,
    /// graph of the innermost frame (the main graph before init)
    pub graph: GraphView,
    pub path: Vec<String>,
    pub goals: Vec<GoalView>,
    /// `graph/wire` of every breakpoint
    pub breakpoints: Vec<String>,
    pub mode: Mode,
    pub initialised: bool,
    /// running, done, parked or failed
    pub status: String,
    pub message: Option<String>,
    /// every goal of the current frame rests at an output or a breakpoint
    pub terminated: bool,
    /// terminated only because of breakpoints
    pub parked: bool,
    pub steps: usize,
    pub branches: Vec<String>,
    pub log: Vec<LogEvent>,
    /// SHA-256 of the full JSON-lines trace
    pub trace_hash: String,
}

pub fn trace_hash(log: &[LogEvent]) -> String {
    format!("{:x}", Sha256::digest(to_jsonl(log).as_bytes()))
}

fn graph_view(bundle: &Bundle, name: &str, st: Option<&EvalState>) -> GraphView {
    let doc = &bundle.doc().graphs[name];
    let mut on: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    if let Some(f) = st.and_then(|s| s.frames().last()) {
        for t in &f.tokens {
            on.entry(t.wire.as_str()).or_default().push(label_text(&t.pname));
        }
    }
    GraphView {
        name: name.to_string(),
        inputs: doc.inputs,
        outputs: doc.outputs,
        nodes: doc.nodes.clone(),
        wires: doc
            .wires
            .iter()
            .map(|w| WireView {
                id: w.id.clone(),
                src: w.src.clone(),
                dst: w.dst.clone(),
                goaltype: w.goaltype.clone(),
                goals: on.remove(w.id.as_str()).unwrap_or_default(),
            })
            .collect(),
    }
}

pub fn build(session: &str, bundle: &Bundle, mode: Mode, st: Option<&EvalState>, tags: &[Tag]) -> Snapshot {
    let breakpoints = bundle.breakpoints().into_iter().map(|(g, w)| format!("{g}/{w}")).collect();
    let Some(st) = st else {
        return Snapshot {
            session: session.to_string(),
            main: bundle.main().to_string(),
            graph: graph_view(bundle, bundle.main(), None),
            path: vec![bundle.main().to_string()],
            goals: vec![],
            breakpoints,
            mode,
            initialised: false,
            status: "idle".into(),
            message: None,
            terminated: false,
            parked: false,
            steps: 0,
            branches: vec![],
            log: vec![],
            trace_hash: trace_hash(&[]),
        };
    };
    let top = st.frames().last().expect("a frame");
    let goals = st
        .goals()
        .into_iter()
        .map(|(depth, t, p)| GoalView {
            pname: label_text(&p.pname),
            depth,
            graph: st.frames()[depth].graph.clone(),
            wire: t.wire.clone(),
            hyps: p.goal.hyps.iter().map(|h| h.to_string()).collect(),
            concl: p.goal.concl.to_string(),
            env: p.env.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        })
        .collect();
    let (status, message, over) = match st.status() {
        Status::Running => ("running", None, false),
        Status::Done => ("done", None, true),
        Status::Parked => ("parked", None, false),
        Status::Failed(m) => ("failed", Some(m.clone()), true),
    };
    let at_rest = over || st.terminated(Mode::Debug);
    let log = filter(st.log(), tags);
    let skip = log.len().saturating_sub(RECENT_LOG);
    Snapshot {
        session: session.to_string(),
        main: bundle.main().to_string(),
        graph: graph_view(st.bundle(), &top.graph, Some(st)),
        path: psg_psgraph::eval::frame_path(st.frames()),
        goals,
        breakpoints,
        mode: st.mode(),
        initialised: true,
        status: status.into(),
        message,
        terminated: at_rest,
        parked: at_rest && !over && !st.terminated(Mode::Automatic),
        steps: st.steps(),
        branches: st.last_branches().to_vec(),
        log: log.into_iter().skip(skip).cloned().collect(),
        trace_hash: trace_hash(st.log()),
    }
}
