//! The evaluation engine: goal nodes flowing through a strategy graph.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use psg_goaltype::{Env, Evaluator, GoalCtx, GoalType, GtArg};
use psg_kernel::{Goal, Label, Thm};
use psg_tactics::{label_text, PNode, PPlan};
use serde::{Deserialize, Serialize};

use crate::error::{PsgError, Result};
use crate::graph::{Bundle, NodeKind, Port, Wire};
use crate::log::{LogEvent, Tag};

pub const DEFAULT_MAX_FRAMES: usize = 64;
pub const DEFAULT_MAX_STEPS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Automatic,
    Interactive,
    Debug,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Mode, String> {
        match s {
            "auto" | "automatic" => Ok(Mode::Automatic),
            "interactive" => Ok(Mode::Interactive),
            "debug" => Ok(Mode::Debug),
            _ => Err(format!("unknown mode `{s}` (auto, interactive, debug)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Automatic => "automatic",
            Mode::Interactive => "interactive",
            Mode::Debug => "debug",
        })
    }
}

/// A goal node sitting on a wire of a frame's graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub pname: Label,
    pub wire: String,
}

/// The graph-tactic node a frame was entered from.
#[derive(Clone, Debug)]
pub struct Call {
    pub node: String,
    pub parent_env: Env,
    pub args: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Frame {
    pub graph: String,
    pub tokens: Vec<Token>,
    pub call: Option<Call>,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub frames: Vec<Frame>,
    pub plan: PPlan,
}

#[derive(Clone, Debug)]
struct BranchPoint {
    step: usize,
    alts: Vec<(String, Config)>,
    next: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Running,
    /// the root frame has terminated
    Done,
    /// debug mode: every goal of the current frame waits at a breakpoint or an output
    Parked,
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    /// a rule fired; `branches` alternatives were generated and the first was taken
    Moved { rule: &'static str, branches: usize },
    /// the step failed and an earlier alternative was resumed
    Backtracked,
    /// the step failed with no alternative left
    Failed,
}

#[derive(Debug)]
pub enum RunOutcome {
    Proved(Thm),
    /// terminated with goals left on output wires
    Open(Vec<PNode>),
    Failed(String),
    Parked,
    Budget,
    /// interactive mode: the caller drives evaluation
    Paused,
}

type Alt = (String, Config);

pub struct EvalState {
    bundle: Arc<Bundle>,
    mode: Mode,
    cfg: Config,
    branches: Vec<BranchPoint>,
    log: Vec<LogEvent>,
    step_no: usize,
    status: Status,
    last_alts: Vec<String>,
    backtracks: usize,
    pub max_frames: usize,
    pub max_steps: usize,
}

fn env_entries(env: &Env) -> String {
    env.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join(", ")
}

/// Environment entries a goal type refers to.
fn relevant_env(gt: &GoalType, env: &Env) -> String {
    let mut seen = Vec::new();
    for c in &gt.clauses {
        for a in &c.args {
            if let GtArg::EnvRef(v) = a {
                if !seen.contains(v) {
                    seen.push(v.clone());
                }
            }
        }
    }
    seen.iter()
        .filter_map(|v| env.get(v).map(|x| format!("{v} => {x}")))
        .collect::<Vec<_>>()
        .join(", ")
}

fn branch_line(wires: &[&Wire], goals: &[PNode], assign: &[usize]) -> String {
    let mut s = String::from("Branch(goals on the output edges): ");
    for wi in 0..wires.len() {
        let names: Vec<String> =
            goals.iter().zip(assign).filter(|(_, &a)| a == wi).map(|(g, _)| label_text(&g.pname)).collect();
        s.push_str(&format!("| {} ", names.join(" ")));
    }
    s.push('|');
    s
}

/// A copy of the base configuration, or the base itself for the last use.
fn fork(base: &mut Option<Config>, last: bool) -> Config {
    if last {
        base.take().expect("base configuration")
    } else {
        base.as_ref().expect("base configuration").clone()
    }
}

fn cartesian(sats: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for s in sats {
        out = out.iter().flat_map(|pre| s.iter().map(move |&x| [pre.as_slice(), &[x]].concat())).collect();
    }
    out
}

impl EvalState {
    /// Place `goal` with `env` on every satisfying input wire of the main graph.
    pub fn init(bundle: Arc<Bundle>, goal: Goal, env: Env, mode: Mode) -> Result<EvalState> {
        bundle.check_complete()?;
        let (p, plan) = PPlan::init(goal, env);
        let main = bundle.main().to_string();
        let cfg = Config { frames: vec![Frame { graph: main.clone(), tokens: vec![], call: None }], plan };
        let mut st = EvalState {
            bundle,
            mode,
            cfg,
            branches: vec![],
            log: vec![],
            step_no: 0,
            status: Status::Running,
            last_alts: vec![],
            backtracks: 0,
            max_frames: DEFAULT_MAX_FRAMES,
            max_steps: DEFAULT_MAX_STEPS,
        };
        let bundle = st.bundle.clone();
        let g = bundle.main_graph();
        let mut alts = Vec::new();
        for w in g.input_wires() {
            if st.check(&w.gt, &p) {
                let mut c = st.cfg.clone();
                c.frames[0].tokens.push(Token { pname: p.pname.clone(), wire: w.id.clone() });
                alts.push((format!("input wire {}", w.id), c));
            }
        }
        if alts.is_empty() {
            let msg = format!("Fail to match any input of graph {main} for goal node: {p}");
            st.emit(Tag::FAILURE, msg.clone());
            st.status = Status::Failed(msg);
            return Ok(st);
        }
        st.take(alts);
        st.refresh();
        Ok(st)
    }

    pub fn bundle(&self) -> &Arc<Bundle> {
        &self.bundle
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn status(&self) -> &Status {
        &self.status
    }

    pub fn frames(&self) -> &[Frame] {
        &self.cfg.frames
    }

    pub fn plan(&self) -> &PPlan {
        &self.cfg.plan
    }

    pub fn log(&self) -> &[LogEvent] {
        &self.log
    }

    pub fn steps(&self) -> usize {
        self.step_no
    }

    pub fn backtracks(&self) -> usize {
        self.backtracks
    }

    /// Descriptions of the alternatives generated by the latest step.
    pub fn last_branches(&self) -> &[String] {
        &self.last_alts
    }

    pub fn pnode(&self, pname: &Label) -> Option<&PNode> {
        self.cfg.plan.opengs.get(pname)
    }

    /// Every open goal with the depth of its frame and its wire.
    pub fn goals(&self) -> Vec<(usize, &Token, &PNode)> {
        let mut out = Vec::new();
        for (d, f) in self.cfg.frames.iter().enumerate() {
            for t in &f.tokens {
                out.push((d, t, &self.cfg.plan.opengs[&t.pname]));
            }
        }
        out
    }

    pub fn set_mode(&mut self, mode: Mode) {
        self.mode = mode;
        if !matches!(self.status, Status::Failed(_)) {
            self.refresh();
        }
    }

    fn emit(&mut self, tag: Tag, text: impl Into<String>) {
        self.log.push(LogEvent { step: self.step_no, tag, text: text.into() });
    }

    /// Goal-type check with its log entries.
    fn check(&mut self, gt: &GoalType, p: &PNode) -> bool {
        let rel = relevant_env(gt, &p.env);
        let mut text = format!("evaluating {gt} with pnode {}", label_text(&p.pname));
        if !rel.is_empty() {
            text.push_str(&format!(" env {rel}"));
        }
        self.emit(Tag::GOALTYPE, text);
        let ev = Evaluator::new(self.bundle.defs(), self.bundle.atoms());
        match ev.satisfies(GoalCtx { goal: &p.goal, env: &p.env }, gt) {
            Ok(true) => {
                self.emit(Tag::SUCCESS, "");
                true
            }
            Ok(false) => {
                self.emit(Tag::FAILURE, "");
                false
            }
            Err(e) => {
                self.emit(Tag::FAILURE, e.to_string());
                false
            }
        }
    }

    /// Behind the first goal on a wire every goal is at rest, so a frame is
    /// terminated when each occupied wire ends at an output (or a breakpoint).
    fn frame_terminated(&self, frame: &Frame, mode: Mode) -> bool {
        let g = self.bundle.graph(&frame.graph).expect("graph");
        frame.tokens.iter().all(|t| match &g.wire(&t.wire).expect("token wire exists").dst {
            Port::Out(_) => true,
            Port::Node(n) => mode == Mode::Debug && g.nodes[n] == NodeKind::Breakpoint,
            Port::In(_) => false,
        })
    }

    /// Termination of the current frame under `mode`.
    pub fn terminated(&self, mode: Mode) -> bool {
        self.frame_terminated(self.cfg.frames.last().expect("a frame"), mode)
    }

    fn refresh(&mut self) {
        let top = self.cfg.frames.last().expect("a frame");
        let normal = self.frame_terminated(top, Mode::Automatic);
        self.status = if normal && self.cfg.frames.len() == 1 {
            Status::Done
        } else if self.mode == Mode::Debug && !normal && self.frame_terminated(top, Mode::Debug) {
            Status::Parked
        } else {
            Status::Running
        };
    }

    /// Multiset of goals on wires equals the plan's open goals and the kernel's open labels.
    pub fn check_conservation(&self) -> std::result::Result<(), String> {
        let mut on_wires: Vec<Label> =
            self.cfg.frames.iter().flat_map(|f| f.tokens.iter().map(|t| t.pname.clone())).collect();
        on_wires.sort();
        let opengs: Vec<Label> = self.cfg.plan.opengs.keys().cloned().collect();
        let kernel = self.cfg.plan.gstate.open_labels();
        if on_wires != opengs {
            return Err(format!("goals on wires {on_wires:?} differ from plan {opengs:?}"));
        }
        if opengs != kernel {
            return Err(format!("plan {opengs:?} differs from kernel {kernel:?}"));
        }
        for (l, p) in &self.cfg.plan.opengs {
            if !self.cfg.plan.gstate.goal(l).is_some_and(|g| g.aconv(&p.goal)) {
                return Err(format!("goal {} differs from the kernel's", label_text(l)));
            }
        }
        Ok(())
    }

    /// Keep the first alternative, remembering the rest for backtracking.
    fn take(&mut self, mut alts: Vec<Alt>) -> usize {
        let n = alts.len();
        self.last_alts = alts.iter().map(|(d, _)| d.clone()).collect();
        if n > 1 {
            self.cfg = alts[0].1.clone();
            self.branches.push(BranchPoint { step: self.step_no, alts, next: 1 });
        } else {
            self.cfg = alts.pop().expect("an alternative").1;
        }
        n
    }

    fn backtrack_inner(&mut self) -> bool {
        while let Some(bp) = self.branches.last_mut() {
            if bp.next < bp.alts.len() {
                let k = bp.next;
                bp.next += 1;
                let (desc, cfg) = bp.alts[k].clone();
                let (step, n) = (bp.step, bp.alts.len());
                self.cfg = cfg;
                self.backtracks += 1;
                self.last_alts = vec![desc.clone()];
                self.emit(Tag::EVAL, format!("backtrack to step {step}: branch {} of {n} ({desc})", k + 1));
                self.refresh();
                return true;
            }
            self.branches.pop();
        }
        false
    }

    /// Resume the most recent untried alternative.
    pub fn backtrack(&mut self) -> Result<()> {
        if self.backtrack_inner() {
            Ok(())
        } else {
            Err(PsgError::Invalid("no alternative left to backtrack to".into()))
        }
    }

    /// Switch to alternative `k` (1-based) of the latest step.
    pub fn choose(&mut self, k: usize) -> Result<()> {
        let n = self.last_alts.len();
        if k == 0 || k > n {
            return Err(PsgError::Invalid(format!("no branch {k}: the last step produced {n} branch(es)")));
        }
        if n == 1 {
            return Ok(());
        }
        let bp = self
            .branches
            .iter_mut()
            .rev()
            .find(|b| b.step == self.step_no)
            .ok_or_else(|| PsgError::Invalid("branches of the last step are no longer available".into()))?;
        self.cfg = bp.alts[k - 1].1.clone();
        bp.next = bp.next.max(k);
        self.emit(Tag::EVAL, format!("chose branch {k} of {n}"));
        self.refresh();
        Ok(())
    }

    /// Apply one evaluation rule.
    pub fn step(&mut self) -> Result<StepOutcome> {
        match &self.status {
            Status::Done => return Err(PsgError::Invalid("evaluation has terminated".into())),
            Status::Failed(m) => return Err(PsgError::Invalid(format!("evaluation has failed: {m}"))),
            Status::Parked => {
                return Err(PsgError::Invalid("all goals wait at breakpoints; switch to interactive mode".into()))
            }
            Status::Running => {}
        }
        self.step_no += 1;
        match self.expand() {
            Ok((rule, alts)) => {
                let n = self.take(alts);
                self.refresh();
                Ok(StepOutcome::Moved { rule, branches: n })
            }
            Err(msg) => {
                self.emit(Tag::FAILURE, msg.clone());
                self.last_alts.clear();
                if self.backtrack_inner() {
                    Ok(StepOutcome::Backtracked)
                } else {
                    self.status = Status::Failed(msg);
                    Ok(StepOutcome::Failed)
                }
            }
        }
    }

    /// Step; if that entered a graph tactic, keep going until it has been left.
    pub fn step_over(&mut self) -> Result<StepOutcome> {
        let depth = self.cfg.frames.len();
        let mut out = self.step()?;
        while self.status == Status::Running && self.cfg.frames.len() > depth && self.step_no < self.max_steps {
            out = self.step()?;
        }
        Ok(out)
    }

    pub fn run(&mut self) -> RunOutcome {
        loop {
            match &self.status {
                Status::Done => return self.finish(),
                Status::Failed(m) => return RunOutcome::Failed(m.clone()),
                Status::Parked => {
                    self.mode = Mode::Interactive;
                    self.emit(Tag::EVAL, "stopped at a breakpoint; switched to interactive mode");
                    self.refresh();
                    return RunOutcome::Parked;
                }
                Status::Running => {}
            }
            if self.mode == Mode::Interactive {
                return RunOutcome::Paused;
            }
            if self.step_no >= self.max_steps {
                return RunOutcome::Budget;
            }
            self.step().expect("running state can step");
        }
    }

    fn finish(&self) -> RunOutcome {
        if self.cfg.plan.gstate.is_proved() {
            match self.cfg.plan.gstate.pop_thm() {
                Ok(th) => RunOutcome::Proved(th),
                Err(e) => RunOutcome::Failed(format!("proof reconstruction failed: {e}")),
            }
        } else {
            RunOutcome::Open(self.cfg.plan.opengs.values().cloned().collect())
        }
    }

    pub fn toggle_breakpoint(&mut self, wire: &str) -> Result<bool> {
        let (graph, _) = self.bundle.find_wire(wire)?;
        let (b, on) = self.bundle.toggle_breakpoint(wire)?;
        if !on {
            let fix = |c: &mut Config| {
                for f in c.frames.iter_mut().filter(|f| f.graph == graph) {
                    for t in &mut f.tokens {
                        if let Some(base) = Bundle::unspliced_wire(&t.wire) {
                            if b.graph(&graph).is_some_and(|g| g.wire(&t.wire).is_none()) {
                                t.wire = base.to_string();
                            }
                        }
                    }
                }
            };
            fix(&mut self.cfg);
            for bp in &mut self.branches {
                for (_, c) in &mut bp.alts {
                    fix(c);
                }
            }
        }
        self.bundle = Arc::new(b);
        if !matches!(self.status, Status::Failed(_)) {
            self.refresh();
        }
        Ok(on)
    }

    /// The movable goal with the smallest (wire position, name), if any.
    fn select(&self) -> Option<Token> {
        let frame = self.cfg.frames.last()?;
        let g = self.bundle.graph(&frame.graph)?;
        frame
            .tokens
            .iter()
            .filter(|t| match &g.wire(&t.wire).expect("wire").dst {
                Port::Node(n) => !(self.mode == Mode::Debug && g.nodes[n] == NodeKind::Breakpoint),
                _ => false,
            })
            .min_by_key(|t| (g.wire_index(&t.wire), t.pname.clone()))
            .cloned()
    }

    fn expand(&mut self) -> std::result::Result<(&'static str, Vec<Alt>), String> {
        let top = self.cfg.frames.last().expect("a frame");
        if top.call.is_some() && self.frame_terminated(top, Mode::Automatic) {
            return self.exit_frame().map(|a| ("exit", a));
        }
        let graph_name = top.graph.clone();
        let tok = self.select().ok_or_else(|| "no rule applies to any goal".to_string())?;
        let bundle = self.bundle.clone();
        let g = bundle.graph(&graph_name).expect("graph");
        let node = g.wire(&tok.wire).unwrap().dst.node().expect("selected goal faces a node").to_string();
        let p = self.cfg.plan.opengs[&tok.pname].clone();
        let outs = g.out_wires(&node);
        let mut base = self.cfg.clone();
        base.frames.last_mut().unwrap().tokens.retain(|t| t.pname != tok.pname);
        match &g.nodes[&node] {
            NodeKind::Identity => {
                let ok: Vec<&Wire> = outs.iter().copied().filter(|w| self.check(&w.gt, &p)).collect();
                let mut base = Some(base);
                let mut alts = Vec::new();
                for (i, w) in ok.iter().enumerate() {
                    let mut c = fork(&mut base, i + 1 == ok.len());
                    c.frames.last_mut().unwrap().tokens.push(Token { pname: p.pname.clone(), wire: w.id.clone() });
                    alts.push((format!("{} on {}", label_text(&p.pname), w.id), c));
                }
                if alts.is_empty() {
                    return Err(format!("Fail to match any Loop for the output goal node: {p}"));
                }
                self.emit(Tag::EVAL, format!("Branch(goals on the output edges): {} branch(es) at {node}", alts.len()));
                Ok(("identity", alts))
            }
            NodeKind::Breakpoint => {
                let w = outs.first().expect("breakpoint has an output");
                self.emit(Tag::EVAL, format!("{} crosses breakpoint {node}", label_text(&p.pname)));
                base.frames.last_mut().unwrap().tokens.push(Token { pname: p.pname.clone(), wire: w.id.clone() });
                Ok(("breakpoint", vec![(format!("cross {node}"), base)]))
            }
            NodeKind::Atomic { tactic, args } => {
                let appf = self.bundle.registry().appf(tactic, args.clone()).map_err(|e| e.to_string())?;
                self.emit(Tag::ENV_DATA, env_entries(&p.env));
                let outcomes = appf(&p, &self.cfg.plan).map_err(|e| format!("{} failed on {p}: {e}", g.nodes[&node]))?;
                if outcomes.is_empty() {
                    return Err(format!("{} gave no result on {p}", g.nodes[&node]));
                }
                let mut picks = Vec::new();
                let mut unmatched = None;
                for (k, (subs, _)) in outcomes.iter().enumerate() {
                    let mut text = String::from("Open goals");
                    for s in subs {
                        text.push_str(&format!("\n   [Goal {}] {}", label_text(&s.pname), s.goal));
                    }
                    self.emit(Tag::GOAL, text);
                    let sats: Vec<Vec<usize>> = subs
                        .iter()
                        .map(|s| (0..outs.len()).filter(|&i| self.check(&outs[i].gt, s)).collect())
                        .collect();
                    if let Some(i) = sats.iter().position(|s| s.is_empty()) {
                        unmatched.get_or_insert_with(|| {
                            format!("Fail to match any output wire of {node} for goal node: {}", subs[i])
                        });
                        continue;
                    }
                    for assign in cartesian(&sats) {
                        let line = if subs.is_empty() {
                            "goal discharged".to_string()
                        } else {
                            branch_line(&outs, subs, &assign)
                        };
                        self.emit(Tag::EVAL, line.clone());
                        picks.push((line, k, assign));
                    }
                }
                let n = picks.len();
                let mut base = Some(base);
                let mut alts = Vec::new();
                for (i, (line, k, assign)) in picks.into_iter().enumerate() {
                    let (subs, plan) = &outcomes[k];
                    let mut c = fork(&mut base, i + 1 == n);
                    c.plan = plan.clone();
                    let f = c.frames.last_mut().unwrap();
                    for (s, &wi) in subs.iter().zip(&assign) {
                        f.tokens.push(Token { pname: s.pname.clone(), wire: outs[wi].id.clone() });
                    }
                    alts.push((line, c));
                }
                if alts.is_empty() {
                    return Err(unmatched.unwrap_or_else(|| "no valid combination of subgoals".into()));
                }
                Ok(("atomic", alts))
            }
            NodeKind::Graph { graph, args } => {
                if self.cfg.frames.len() >= self.max_frames {
                    return Err(format!("graph tactic {graph} exceeds the nesting limit of {} frames", self.max_frames));
                }
                let child_env: Env = p.env.iter().filter(|(k, _)| args.contains(k)).map(|(k, v)| (k.clone(), v.clone())).collect();
                let pc = PNode { env: child_env.clone(), ..p.clone() };
                self.emit(Tag::EVAL, format!("enter graph {graph} with {pc}"));
                let inner = bundle.graph(graph).expect("graph tactic target exists");
                let ok: Vec<&Wire> = inner.input_wires().into_iter().filter(|w| self.check(&w.gt, &pc)).collect();
                let mut base = Some(base);
                let mut alts = Vec::new();
                for (i, w) in ok.iter().enumerate() {
                    let mut c = fork(&mut base, i + 1 == ok.len());
                    c.plan.replace_env(&p.pname, child_env.clone());
                    c.frames.push(Frame {
                        graph: graph.clone(),
                        tokens: vec![Token { pname: p.pname.clone(), wire: w.id.clone() }],
                        call: Some(Call { node: node.clone(), parent_env: p.env.clone(), args: args.clone() }),
                    });
                    alts.push((format!("enter {graph} on {}", w.id), c));
                }
                if alts.is_empty() {
                    return Err(format!("Fail to match any input of graph {graph} for goal node: {pc}"));
                }
                Ok(("graph", alts))
            }
        }
    }

    fn exit_frame(&mut self) -> std::result::Result<Vec<Alt>, String> {
        let mut base = self.cfg.clone();
        let frame = base.frames.pop().expect("nested frame");
        let call = frame.call.clone().expect("nested frame has a call");
        let bundle = self.bundle.clone();
        let inner = bundle.graph(&frame.graph).expect("graph");
        let mut toks = frame.tokens.clone();
        toks.sort_by_key(|t| {
            let out = match inner.wire(&t.wire).unwrap().dst {
                Port::Out(j) => j,
                _ => usize::MAX,
            };
            (out, t.pname.clone())
        });
        let mut goals = Vec::new();
        for t in &toks {
            let p = &base.plan.opengs[&t.pname];
            let mut env = call.parent_env.clone();
            for a in &call.args {
                if let Some(v) = p.env.get(a) {
                    env.insert(a.clone(), v.clone());
                }
            }
            base.plan.replace_env(&t.pname, env);
            goals.push(base.plan.opengs[&t.pname].clone());
        }
        self.emit(Tag::EVAL, format!("exit graph {} with {} goal(s)", frame.graph, goals.len()));
        let parent = bundle.graph(&base.frames.last().unwrap().graph).expect("graph");
        let outs = parent.out_wires(&call.node);
        let sats: Vec<Vec<usize>> =
            goals.iter().map(|s| (0..outs.len()).filter(|&i| self.check(&outs[i].gt, s)).collect()).collect();
        if let Some(i) = sats.iter().position(|s| s.is_empty()) {
            return Err(format!("Fail to match any output wire of {} for goal node: {}", call.node, goals[i]));
        }
        let mut alts = Vec::new();
        let assigns = cartesian(&sats);
        let mut base = Some(base);
        for (i, assign) in assigns.iter().enumerate() {
            let line = if goals.is_empty() { "goal discharged".to_string() } else { branch_line(&outs, &goals, assign) };
            self.emit(Tag::EVAL, line.clone());
            let mut c = fork(&mut base, i + 1 == assigns.len());
            let f = c.frames.last_mut().unwrap();
            for (s, &wi) in goals.iter().zip(assign) {
                f.tokens.push(Token { pname: s.pname.clone(), wire: outs[wi].id.clone() });
            }
            alts.push((line, c));
        }
        Ok(alts)
    }
}

/// Frame path from the root graph, e.g. `main / strip_imp_concl`.
pub fn frame_path(frames: &[Frame]) -> Vec<String> {
    frames.iter().map(|f| f.graph.clone()).collect()
}

/// Environments of all open goals, keyed by label text.
pub fn envs(st: &EvalState) -> BTreeMap<String, Env> {
    st.plan().opengs.iter().map(|(l, p)| (label_text(l), p.env.clone())).collect()
}
