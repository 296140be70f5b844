//! One bundle, at most one evaluation, and the verbs acting on them.

use std::collections::BTreeMap;
use std::sync::Arc;

use psg_goaltype::{Env, EnvVal};
use psg_kernel::{parse_goal, parse_term, Term};
use psg_psgraph::{parse_tags, Bundle, Edit, EvalState, Mode, RunOutcome, StepOutcome, Tag};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::snapshot::{self, Snapshot};
use crate::{Result, ServiceError};

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "cmd", rename_all = "snake_case", deny_unknown_fields)]
pub enum Command {
    LoadGraph {
        #[serde(default)]
        fixture: Option<String>,
        #[serde(default)]
        bundle: Option<Value>,
        #[serde(default)]
        path: Option<String>,
        #[serde(default)]
        subscribe: Option<bool>,
    },
    Init {
        goal: String,
        #[serde(default)]
        mode: Option<String>,
        #[serde(default)]
        env: BTreeMap<String, Value>,
        #[serde(default)]
        max_steps: Option<usize>,
    },
    Step,
    StepOver,
    Run,
    ChooseBranch {
        k: usize,
    },
    Backtrack,
    ToggleBreakpoint {
        wire: String,
    },
    SetMode {
        mode: String,
    },
    GetSnapshot,
    SetLogFilter {
        tags: String,
    },
    EditGraph {
        edit: Edit,
    },
    Reset,
    Close,
}

impl Command {
    /// Verbs after which subscribers get a fresh snapshot.
    pub fn changes_state(&self) -> bool {
        !matches!(self, Command::GetSnapshot | Command::Close)
    }
}

pub struct Session {
    pub id: String,
    pub bundle: Arc<Bundle>,
    pub state: Option<EvalState>,
    pub mode: Mode,
    pub tags: Vec<Tag>,
    pub subscribed: bool,
}

/// Bundle named by a `load_graph` request.
pub fn load_bundle(fixture: Option<&str>, bundle: Option<&Value>, path: Option<&str>) -> Result<Bundle> {
    let reg = psg_strategies::registry();
    let text = match (fixture, bundle, path) {
        (Some(name), None, None) => {
            return psg_strategies::load(name).map_err(|e| ServiceError::Parse(e.to_string()));
        }
        (None, Some(v), None) => v.to_string(),
        (None, None, Some(p)) => std::fs::read_to_string(p).map_err(|e| ServiceError::Parse(format!("{p}: {e}")))?,
        _ => return Err(ServiceError::BadRequest("load_graph needs exactly one of fixture, bundle, path".into())),
    };
    let doc = serde_json::from_str(&text).map_err(|e| ServiceError::Parse(e.to_string()))?;
    Ok(Bundle::from_doc_partial(doc, reg)?)
}

fn env_of(vals: &BTreeMap<String, Value>) -> Result<Env> {
    let term = |s: &str| parse_term(s).map_err(|e| ServiceError::Parse(format!("`{s}`: {e}")));
    let mut env = Env::new();
    for (k, v) in vals {
        let val = match v {
            Value::String(s) => EnvVal::T(term(s)?),
            Value::Array(xs) => EnvVal::TList(
                xs.iter()
                    .map(|x| x.as_str().ok_or_else(|| ServiceError::Parse(format!("{k}: expected strings"))).and_then(term))
                    .collect::<Result<Vec<Term>>>()?,
            ),
            _ => return Err(ServiceError::Parse(format!("{k}: expected a term or a list of terms"))),
        };
        let key = if k.starts_with('?') { k.clone() } else { format!("?{k}") };
        env.insert(key, val);
    }
    Ok(env)
}

fn mode_of(s: &str) -> Result<Mode> {
    s.parse().map_err(ServiceError::Parse)
}

fn run_result(out: RunOutcome) -> Value {
    match out {
        RunOutcome::Proved(th) => json!({"outcome": "proved", "theorem": th.to_string()}),
        RunOutcome::Open(gs) => json!({"outcome": "open", "goals": gs.iter().map(|p| p.goal.to_string()).collect::<Vec<_>>()}),
        RunOutcome::Failed(m) => json!({"outcome": "failed", "msg": m}),
        RunOutcome::Parked => json!({"outcome": "parked"}),
        RunOutcome::Budget => json!({"outcome": "budget"}),
        RunOutcome::Paused => json!({"outcome": "paused"}),
    }
}

fn step_result(out: StepOutcome) -> Value {
    match out {
        StepOutcome::Moved { rule, branches } => json!({"outcome": "moved", "rule": rule, "branches": branches}),
        StepOutcome::Backtracked => json!({"outcome": "backtracked"}),
        StepOutcome::Failed => json!({"outcome": "failed"}),
    }
}

impl Session {
    pub fn new(id: String, bundle: Bundle, subscribed: bool) -> Session {
        Session { id, bundle: Arc::new(bundle), state: None, mode: Mode::Automatic, tags: vec![], subscribed }
    }

    pub fn snapshot(&self) -> Snapshot {
        snapshot::build(&self.id, &self.bundle, self.mode, self.state.as_ref(), &self.tags)
    }

    fn state(&mut self) -> Result<&mut EvalState> {
        self.state.as_mut().ok_or_else(|| ServiceError::InvalidInMode("no evaluation: send init first".into()))
    }

    /// Apply a verb to this session, returning its result object.
    pub fn apply(&mut self, cmd: Command) -> Result<Value> {
        match cmd {
            Command::LoadGraph { fixture, bundle, path, subscribe } => {
                if self.state.is_some() {
                    return Err(ServiceError::EditWhileRunning);
                }
                self.bundle = Arc::new(load_bundle(fixture.as_deref(), bundle.as_ref(), path.as_deref())?);
                if let Some(s) = subscribe {
                    self.subscribed = s;
                }
                Ok(json!({"main": self.bundle.main()}))
            }
            Command::Init { goal, mode, env, max_steps } => {
                if let Some(m) = mode {
                    self.mode = mode_of(&m)?;
                }
                if max_steps == Some(0) {
                    return Err(ServiceError::BadRequest("max_steps must be at least 1".into()));
                }
                let goal = parse_goal(&goal).map_err(|e| ServiceError::Parse(e.to_string()))?;
                let mut st = EvalState::init(self.bundle.clone(), goal, env_of(&env)?, self.mode)?;
                if let Some(n) = max_steps {
                    st.max_steps = n;
                }
                let status = snapshot::build(&self.id, &self.bundle, self.mode, Some(&st), &[]).status;
                self.state = Some(st);
                Ok(json!({"status": status}))
            }
            Command::Step => Ok(step_result(self.state()?.step()?)),
            Command::StepOver => Ok(step_result(self.state()?.step_over()?)),
            Command::Run => {
                let st = self.state()?;
                let out = st.run();
                self.mode = st.mode();
                Ok(run_result(out))
            }
            Command::ChooseBranch { k } => {
                self.state()?.choose(k)?;
                Ok(json!({}))
            }
            Command::Backtrack => {
                self.state()?.backtrack()?;
                Ok(json!({}))
            }
            Command::ToggleBreakpoint { wire } => {
                let on = match self.state.as_mut() {
                    Some(st) => {
                        let on = st.toggle_breakpoint(&wire)?;
                        self.bundle = st.bundle().clone();
                        on
                    }
                    None => {
                        let (b, on) = self.bundle.toggle_breakpoint(&wire).map_err(ServiceError::Graph)?;
                        self.bundle = Arc::new(b);
                        on
                    }
                };
                Ok(json!({"on": on}))
            }
            Command::SetMode { mode } => {
                self.mode = mode_of(&mode)?;
                if let Some(st) = self.state.as_mut() {
                    st.set_mode(self.mode);
                }
                Ok(json!({}))
            }
            Command::GetSnapshot => Ok(json!({"snapshot": self.snapshot()})),
            Command::SetLogFilter { tags } => {
                self.tags = parse_tags(&tags).map_err(ServiceError::Parse)?;
                Ok(json!({}))
            }
            Command::EditGraph { edit } => {
                if self.state.is_some() {
                    return Err(ServiceError::EditWhileRunning);
                }
                self.bundle = Arc::new(self.bundle.edit(&edit).map_err(ServiceError::Graph)?);
                Ok(json!({}))
            }
            Command::Reset => {
                self.state = None;
                Ok(json!({}))
            }
            Command::Close => Ok(json!({})),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_values() {
        let vals: BTreeMap<String, Value> =
            serde_json::from_value(json!({"g": "A /\\ B", "?hs": ["A", "B"]})).unwrap();
        let env = env_of(&vals).unwrap();
        assert_eq!(env["?g"].to_string(), "A /\\ B");
        assert!(matches!(&env["?hs"], EnvVal::TList(ts) if ts.len() == 2));
        let bad: BTreeMap<String, Value> = serde_json::from_value(json!({"n": 3})).unwrap();
        assert!(matches!(env_of(&bad), Err(ServiceError::Parse(_))));
    }
}
