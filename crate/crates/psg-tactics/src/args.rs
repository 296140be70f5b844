//! Tactic arguments and their resolution against a goal node.

use std::fmt;

use psg_goaltype::{EnvVal, Focus};
use psg_kernel::Term;

use crate::error::{args_err, Result, TacError};
use crate::plan::PNode;

#[derive(Clone, Debug, PartialEq)]
pub enum ArgData {
    Trms(Vec<Term>),
    /// `?`-prefixed environment variable
    Var(String),
    Str(String),
    /// bare identifier; `hyps` and `concl` denote parts of the goal
    Name(String),
    Focus(Focus),
    FocusList(Vec<Focus>),
    Names(Vec<String>),
}

impl fmt::Display for ArgData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArgData::Trms(ts) if ts.len() == 1 => write!(f, "@{{term \"{}\"}}", ts[0]),
            ArgData::Trms(ts) => {
                let parts: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
            ArgData::Var(v) => f.write_str(v),
            ArgData::Str(s) => write!(f, "\"{s}\""),
            ArgData::Name(n) => f.write_str(n),
            ArgData::Focus(x) => write!(f, "{x}"),
            ArgData::FocusList(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join("; "))
            }
            ArgData::Names(ns) => write!(f, "[{}]", ns.join(", ")),
        }
    }
}

impl ArgData {
    pub fn of_val(v: &EnvVal) -> ArgData {
        match v {
            EnvVal::T(t) => ArgData::Trms(vec![t.clone()]),
            EnvVal::TList(ts) => ArgData::Trms(ts.clone()),
            EnvVal::N(n) => ArgData::Name(n.clone()),
            EnvVal::NList(ns) => ArgData::Names(ns.clone()),
            EnvVal::FocusList(fs) => ArgData::FocusList(fs.clone()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ArgData::Trms(_) => "terms",
            ArgData::Var(_) => "variable",
            ArgData::Str(_) => "string",
            ArgData::Name(_) => "name",
            ArgData::Focus(_) => "focus",
            ArgData::FocusList(_) => "focus list",
            ArgData::Names(_) => "names",
        }
    }
}

fn resolve_name(n: &str, p: &PNode) -> ArgData {
    match n {
        "hyps" => ArgData::Trms(p.goal.hyps.clone()),
        "concl" => ArgData::Trms(vec![p.goal.concl.clone()]),
        _ => ArgData::Name(n.to_string()),
    }
}

/// Arguments for an ordinary tactic: every `?var` is replaced by its value.
pub fn resolve_args(args: &[ArgData], p: &PNode) -> Result<Vec<ArgData>> {
    args.iter()
        .map(|a| match a {
            ArgData::Var(v) => p.env.get(v).map(ArgData::of_val).ok_or_else(|| TacError::Unbound(v.clone())),
            ArgData::Name(n) => Ok(resolve_name(n, p)),
            other => Ok(other.clone()),
        })
        .collect()
}

/// Arguments for an environment tactic: variables stay as targets.
pub fn resolve_env_args(args: &[ArgData], p: &PNode) -> Vec<ArgData> {
    args.iter()
        .map(|a| match a {
            ArgData::Name(n) => resolve_name(n, p),
            other => other.clone(),
        })
        .collect()
}

// accessors used by tactic constructors

pub(crate) fn arity(tac: &str, args: &[ArgData], n: usize) -> Result<()> {
    if args.len() != n {
        return args_err(tac, format!("expects {n} argument(s), got {}", args.len()));
    }
    Ok(())
}

pub(crate) fn one_term(tac: &str, a: &ArgData) -> Result<Term> {
    match a {
        ArgData::Trms(ts) if ts.len() == 1 => Ok(ts[0].clone()),
        other => args_err(tac, format!("expected a single term, got {} `{other}`", other.kind())),
    }
}

pub(crate) fn terms(tac: &str, a: &ArgData) -> Result<Vec<Term>> {
    match a {
        ArgData::Trms(ts) => Ok(ts.clone()),
        other => args_err(tac, format!("expected terms, got {} `{other}`", other.kind())),
    }
}

pub(crate) fn text(tac: &str, a: &ArgData) -> Result<String> {
    match a {
        ArgData::Str(s) | ArgData::Name(s) => Ok(s.clone()),
        other => args_err(tac, format!("expected a name, got {} `{other}`", other.kind())),
    }
}

pub(crate) fn var(tac: &str, a: &ArgData) -> Result<String> {
    match a {
        ArgData::Var(v) => Ok(v.clone()),
        other => args_err(tac, format!("expected a variable, got {} `{other}`", other.kind())),
    }
}

pub(crate) fn focus_list(tac: &str, a: &ArgData) -> Result<Vec<Focus>> {
    match a {
        ArgData::FocusList(fs) => Ok(fs.clone()),
        ArgData::Focus(f) => Ok(vec![f.clone()]),
        other => args_err(tac, format!("expected a focus list, got {} `{other}`", other.kind())),
    }
}
