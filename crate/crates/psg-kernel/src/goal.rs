//! Goals, tactics and the labelled subgoal package.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{KernelError, Result};
use crate::term::{mem_alpha, Term};
use crate::thm::Thm;

#[derive(Clone, Debug)]
pub struct Goal {
    pub hyps: Vec<Term>,
    pub concl: Term,
}

impl Goal {
    pub fn new(hyps: Vec<Term>, concl: Term) -> Result<Goal> {
        for t in hyps.iter().chain(std::iter::once(&concl)) {
            if !t.ty().is_bool() {
                return Err(KernelError::Type(format!("`{t}` has type {}, not Bool", t.ty())));
            }
        }
        Ok(Goal { hyps, concl })
    }

    pub fn concl_only(concl: Term) -> Result<Goal> {
        Goal::new(vec![], concl)
    }

    /// α-equality of hypothesis lists (order-sensitive) and conclusions.
    pub fn aconv(&self, other: &Goal) -> bool {
        self.hyps.len() == other.hyps.len()
            && self.hyps.iter().zip(&other.hyps).all(|(a, b)| a.aconv(b))
            && self.concl.aconv(&other.concl)
    }

    pub fn has_hyp(&self, t: &Term) -> bool {
        mem_alpha(t, &self.hyps)
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hs: Vec<String> = self.hyps.iter().map(|h| h.to_string()).collect();
        if hs.is_empty() {
            write!(f, "|- {}", self.concl)
        } else {
            write!(f, "{} |- {}", hs.join(", "), self.concl)
        }
    }
}

/// Parse `h1, h2 |- c` (or just `c`). Free variables share types across the sequent.
pub fn parse_goal(src: &str) -> Result<Goal> {
    let (hs, c) = match src.find("|-") {
        Some(i) => (&src[..i], &src[i + 2..]),
        None => ("", src),
    };
    let parts: Vec<&str> = if hs.trim().is_empty() { vec![] } else { crate::parse::split_top(hs, ',') };
    let mut joined = format!("({})", c);
    for p in parts.iter().rev() {
        joined = format!("({p}) /\\ ({joined})");
    }
    let mut t = crate::parse::parse_prop(&joined)?;
    let mut hyps = Vec::new();
    for _ in &parts {
        let (h, rest) = t.dest_conj().expect("conjunction built above");
        hyps.push(h.clone());
        t = rest.clone();
    }
    Goal::new(hyps, t)
}

pub type Proof = Arc<dyn Fn(Vec<Thm>) -> Result<Thm> + Send + Sync>;
pub type Tactic = Arc<dyn Fn(&Goal) -> Result<(Vec<Goal>, Proof)> + Send + Sync>;

pub fn proof(f: impl Fn(Vec<Thm>) -> Result<Thm> + Send + Sync + 'static) -> Proof {
    Arc::new(f)
}

pub fn tactic(f: impl Fn(&Goal) -> Result<(Vec<Goal>, Proof)> + Send + Sync + 'static) -> Tactic {
    Arc::new(f)
}

/// Dot-separated naturals; the root is the empty label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Label(Vec<u32>);

impl Label {
    pub fn root() -> Label {
        Label(vec![])
    }

    pub fn parse(s: &str) -> Result<Label> {
        if s.is_empty() {
            return Ok(Label::root());
        }
        s.split('.')
            .map(|p| p.parse::<u32>().map_err(|_| KernelError::UnknownLabel(s.to_string())))
            .collect::<Result<Vec<_>>>()
            .map(Label)
    }

    pub fn child(&self, i: u32) -> Label {
        let mut v = self.0.clone();
        v.push(i);
        Label(v)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

enum Just {
    Done(Thm),
    Pending(Proof, Vec<u64>),
}

// persistent list of justifications, newest first
struct JustNode {
    id: u64,
    just: Just,
    next: Option<Arc<JustNode>>,
}

#[derive(Clone)]
struct OpenGoal {
    id: u64,
    goal: Goal,
}

#[derive(Clone)]
pub struct GoalState {
    root: Goal,
    open: im::OrdMap<Label, OpenGoal>,
    current: Option<Label>,
    justs: Option<Arc<JustNode>>,
    next_id: u64,
    created: Vec<Label>,
    prev: Option<Arc<GoalState>>,
    depth: usize,
}

impl fmt::Debug for GoalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GoalState")
            .field("root", &self.root.to_string())
            .field("open", &self.open_goals().iter().map(|(l, g)| format!("{l}: {g}")).collect::<Vec<_>>())
            .field("current", &self.current.as_ref().map(|l| l.to_string()))
            .finish()
    }
}

impl GoalState {
    pub fn set_goal(g: Goal) -> GoalState {
        let mut open = im::OrdMap::new();
        open.insert(Label::root(), OpenGoal { id: 0, goal: g.clone() });
        GoalState {
            root: g,
            open,
            current: Some(Label::root()),
            justs: None,
            next_id: 1,
            created: vec![Label::root()],
            prev: None,
            depth: 0,
        }
    }

    pub fn root(&self) -> &Goal {
        &self.root
    }

    pub fn current(&self) -> Option<&Label> {
        self.current.as_ref()
    }

    pub fn current_goal(&self) -> Option<&Goal> {
        self.current.as_ref().and_then(|l| self.open.get(l)).map(|o| &o.goal)
    }

    pub fn goal(&self, label: &Label) -> Option<&Goal> {
        self.open.get(label).map(|o| &o.goal)
    }

    pub fn open_goals(&self) -> Vec<(&Label, &Goal)> {
        self.open.iter().map(|(l, o)| (l, &o.goal)).collect()
    }

    pub fn open_labels(&self) -> Vec<Label> {
        self.open.keys().cloned().collect()
    }

    pub fn is_open(&self, label: &Label) -> bool {
        self.open.contains_key(label)
    }

    pub fn is_proved(&self) -> bool {
        self.open.is_empty()
    }

    /// Labels produced by the most recent tactic application, in subgoal order.
    pub fn created(&self) -> &[Label] {
        &self.created
    }

    /// Number of states that `undo` can step back through.
    pub fn history_len(&self) -> usize {
        self.depth
    }

    pub fn set_labelled_goal(&self, label: &Label) -> Result<GoalState> {
        if !self.open.contains_key(label) {
            return Err(KernelError::UnknownLabel(label.to_string()));
        }
        let mut st = self.clone();
        st.current = Some(label.clone());
        Ok(st)
    }

    pub fn apply_tactic(&self, tac: &Tactic) -> Result<GoalState> {
        let label = self
            .current
            .clone()
            .ok_or_else(|| KernelError::State("no current goal".into()))?;
        self.apply_tactic_at(&label, tac)
    }

    pub fn apply_tactic_at(&self, label: &Label, tac: &Tactic) -> Result<GoalState> {
        let og = self.open.get(label).ok_or_else(|| KernelError::UnknownLabel(label.to_string()))?;
        let (subgoals, prf) = tac(&og.goal)?;
        let mut st = self.clone();
        st.prev = Some(Arc::new(self.clone()));
        st.depth = self.depth + 1;
        st.open.remove(label);
        let just = if subgoals.is_empty() {
            let th = prf(vec![])?;
            check_achieves(&th, &og.goal)?;
            Just::Done(th)
        } else {
            let mut ids = Vec::with_capacity(subgoals.len());
            let single = subgoals.len() == 1;
            st.created.clear();
            for (i, g) in subgoals.into_iter().enumerate() {
                let l = if single { label.clone() } else { label.child(i as u32 + 1) };
                let id = st.next_id;
                st.next_id += 1;
                ids.push(id);
                st.open.insert(l.clone(), OpenGoal { id, goal: g });
                st.created.push(l);
            }
            Just::Pending(prf, ids)
        };
        if matches!(just, Just::Done(_)) {
            st.created.clear();
        }
        st.justs = Some(Arc::new(JustNode { id: og.id, just, next: st.justs.take() }));
        st.current = st.created.first().cloned().or_else(|| st.open.keys().next().cloned());
        Ok(st)
    }

    pub fn undo(&self, n: usize) -> Result<GoalState> {
        let mut st = self;
        for _ in 0..n {
            st = st
                .prev
                .as_deref()
                .ok_or_else(|| KernelError::State("nothing to undo".into()))?;
        }
        Ok(st.clone())
    }

    pub fn pop_thm(&self) -> Result<Thm> {
        if !self.open.is_empty() {
            return Err(KernelError::State(format!("{} goal(s) still open", self.open.len())));
        }
        let mut table: HashMap<u64, &Just> = HashMap::new();
        let mut node = self.justs.as_deref();
        while let Some(n) = node {
            table.entry(n.id).or_insert(&n.just);
            node = n.next.as_deref();
        }
        let th = build(0, &table)?;
        check_achieves(&th, &self.root)?;
        Ok(th)
    }
}

fn build(id: u64, table: &HashMap<u64, &Just>) -> Result<Thm> {
    match table.get(&id) {
        Some(Just::Done(th)) => Ok(th.clone()),
        Some(Just::Pending(prf, kids)) => {
            let ths = kids.iter().map(|k| build(*k, table)).collect::<Result<Vec<_>>>()?;
            prf(ths)
        }
        None => Err(KernelError::State(format!("goal {id} has no justification"))),
    }
}

/// `th` proves `g`: same conclusion up to α, hypotheses among the goal's.
pub fn check_achieves(th: &Thm, g: &Goal) -> Result<()> {
    if !th.concl().aconv(&g.concl) {
        return Err(KernelError::Tactic(format!("invalid tactic: proved `{}` for goal `{g}`", th.concl())));
    }
    if let Some(h) = th.hyps().iter().find(|h| !g.has_hyp(h)) {
        return Err(KernelError::Tactic(format!("invalid tactic: extra hypothesis `{h}`")));
    }
    Ok(())
}
