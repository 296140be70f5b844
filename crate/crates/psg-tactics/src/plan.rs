//! Goal nodes, proof plans and lifting of tactics to application functions.

use std::fmt;
use std::sync::Arc;

use im::OrdMap;
use psg_goaltype::Env;
use psg_kernel::{Goal, GoalState, Label, Tactic};

use crate::args::{resolve_args, resolve_env_args, ArgData};
use crate::error::Result;
use crate::registry::{EnvFn, TacFn};

/// Root label shown as `root`, others as their dotted path.
pub fn label_text(l: &Label) -> String {
    if l.is_root() {
        "root".to_string()
    } else {
        l.to_string()
    }
}

#[derive(Clone, Debug)]
pub struct PNode {
    pub pname: Label,
    pub goal: Goal,
    pub env: Env,
}

impl fmt::Display for PNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[Goal {} : {}]", label_text(&self.pname), self.goal)
    }
}

#[derive(Clone, Debug)]
pub struct PPlan {
    pub gstate: GoalState,
    pub opengs: OrdMap<Label, PNode>,
}

impl PPlan {
    /// Plan for a fresh goal, with the initial node carrying `env`.
    pub fn init(goal: Goal, env: Env) -> (PNode, PPlan) {
        let gstate = GoalState::set_goal(goal.clone());
        let p = PNode { pname: Label::root(), goal, env };
        let mut opengs = OrdMap::new();
        opengs.insert(p.pname.clone(), p.clone());
        (p, PPlan { gstate, opengs })
    }

    pub fn replace_env(&mut self, pname: &Label, env: Env) {
        if let Some(p) = self.opengs.get_mut(pname) {
            p.env = env;
        }
    }
}

/// One alternative outcome: the resulting goal nodes and plan.
pub type Outcome = (Vec<PNode>, PPlan);

/// `pnode * pplan -> (pnode list * pplan) seq`. An error is an empty stream with a reason.
pub type AppF = Arc<dyn Fn(&PNode, &PPlan) -> Result<Vec<Outcome>> + Send + Sync>;

/// Focus the kernel state on the node's label, run `tac`, and wrap the new subgoals.
pub fn lift_tactic(tac: &Tactic, p: &PNode, plan: &PPlan) -> Result<Outcome> {
    let gs = plan.gstate.set_labelled_goal(&p.pname)?.apply_tactic(tac)?;
    let mut opengs = plan.opengs.clone();
    opengs.remove(&p.pname);
    let mut out = Vec::new();
    for l in gs.created() {
        let goal = gs.goal(l).expect("created label is open").clone();
        let q = PNode { pname: l.clone(), goal, env: p.env.clone() };
        opengs.insert(l.clone(), q.clone());
        out.push(q);
    }
    Ok((out, PPlan { gstate: gs, opengs }))
}

pub fn apply_tactic(args: Vec<ArgData>, f: TacFn) -> AppF {
    Arc::new(move |p, plan| {
        let resolved = resolve_args(&args, p)?;
        let tac = f(&resolved)?;
        Ok(vec![lift_tactic(&tac, p, plan)?])
    })
}

/// Each returned environment is a separate alternative; goal and plan are untouched
/// apart from the node's recorded environment.
pub fn apply_env_tactic(args: Vec<ArgData>, f: EnvFn) -> AppF {
    Arc::new(move |p, plan| {
        let resolved = resolve_env_args(&args, p);
        let envs = f(&resolved, &p.env, &p.goal)?;
        Ok(envs
            .into_iter()
            .map(|env| {
                let q = PNode { env, ..p.clone() };
                let mut pl = plan.clone();
                pl.opengs.insert(q.pname.clone(), q.clone());
                (vec![q], pl)
            })
            .collect())
    })
}
