//! Backtracking evaluation of goal types against a goal and its environment.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use psg_kernel::Goal;

use crate::ast::{GoalType, GtArg, GtDefs, Literal};
use crate::env::{override_env, Env, EnvVal, GtEnv};
use crate::error::{GtError, Result};

pub const DEFAULT_MAX_DEPTH: usize = 512;

/// What an atomic predicate sees for each argument.
#[derive(Clone, Debug)]
pub enum Resolved {
    Val(EnvVal),
    Unbound(String),
}

/// The goal under test together with its goal-node environment.
#[derive(Clone, Copy)]
pub struct GoalCtx<'a> {
    pub goal: &'a Goal,
    pub env: &'a Env,
}

pub type AtomFn = Arc<dyn Fn(&GtEnv, &[Resolved], &GoalCtx<'_>) -> Vec<GtEnv> + Send + Sync>;

#[derive(Clone)]
pub struct AtomicGoalType {
    pub name: String,
    pub arity: Option<usize>,
    pub eval: AtomFn,
}

impl fmt::Debug for AtomicGoalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{:?}", self.name, self.arity)
    }
}

/// Registry of atomic goal types.
#[derive(Clone, Default, Debug)]
pub struct Atoms {
    map: BTreeMap<String, AtomicGoalType>,
}

impl Atoms {
    pub fn register_atomic(
        &mut self,
        name: &str,
        arity: Option<usize>,
        f: impl Fn(&GtEnv, &[Resolved], &GoalCtx<'_>) -> Vec<GtEnv> + Send + Sync + 'static,
    ) {
        self.map.insert(name.to_string(), AtomicGoalType { name: name.to_string(), arity, eval: Arc::new(f) });
    }

    pub fn get(&self, name: &str) -> Option<&AtomicGoalType> {
        self.map.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.map.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &AtomicGoalType> {
        self.map.values()
    }
}

fn get_name(goal: &Goal, n: &str) -> EnvVal {
    match n {
        "concl" => EnvVal::T(goal.concl.clone()),
        "hyps" => EnvVal::TList(goal.hyps.clone()),
        other => EnvVal::N(other.to_string()),
    }
}

/// Value of an argument, if it has one.
pub fn lookup(goal: &Goal, env: &Env, gtenv: &GtEnv, a: &GtArg) -> Option<EnvVal> {
    match a {
        GtArg::Name(n) => Some(get_name(goal, n)),
        GtArg::EnvRef(v) => env.get(v).cloned(),
        GtArg::GVar(v) => gtenv.get(v).cloned(),
        GtArg::TermLit(t) => Some(EnvVal::T(t.clone())),
    }
}

fn arity_check(formals: &[String], actuals: &[GtArg]) -> Result<()> {
    if formals.len() != actuals.len() {
        return Err(GtError::Arity { pred: "<call>".into(), expected: formals.len(), got: actuals.len() });
    }
    Ok(())
}

/// Bind each formal to the value of its actual, skipping actuals without one.
pub fn inst_gtenv(goal: &Goal, env: &Env, gtenv: &GtEnv, formals: &[String], actuals: &[GtArg]) -> Result<GtEnv> {
    arity_check(formals, actuals)?;
    Ok(formals
        .iter()
        .zip(actuals)
        .filter_map(|(f, a)| lookup(goal, env, gtenv, a).map(|v| (f.clone(), v)))
        .collect())
}

/// Map the callee's bindings back onto the caller's variable actuals.
pub fn res_gtenv(out: &GtEnv, formals: &[String], actuals: &[GtArg]) -> Result<GtEnv> {
    arity_check(formals, actuals)?;
    Ok(formals
        .iter()
        .zip(actuals)
        .filter_map(|(f, a)| match a {
            GtArg::GVar(v) => out.get(f).map(|val| (v.clone(), val.clone())),
            _ => None,
        })
        .collect())
}

/// Continuation: receives a solution, returns `true` to stop the search.
type K<'k> = &'k mut dyn FnMut(GtEnv) -> Result<bool>;

pub struct Evaluator<'a> {
    pub defs: &'a GtDefs,
    pub atoms: &'a Atoms,
    pub max_depth: usize,
}

impl<'a> Evaluator<'a> {
    pub fn new(defs: &'a GtDefs, atoms: &'a Atoms) -> Evaluator<'a> {
        Evaluator { defs, atoms, max_depth: DEFAULT_MAX_DEPTH }
    }

    /// Feed every solution of `gt` to `f` until it returns `true`.
    pub fn for_each(&self, cx: GoalCtx<'_>, gt: &GoalType, f: &mut dyn FnMut(GtEnv) -> bool) -> Result<()> {
        self.body(cx, &GtEnv::new(), &gt.clauses, 0, &mut |g| Ok(f(g)))?;
        Ok(())
    }

    /// Up to `limit` solutions, in search order.
    pub fn solutions(&self, cx: GoalCtx<'_>, gt: &GoalType, limit: usize) -> Result<Vec<GtEnv>> {
        let mut out = Vec::new();
        if limit == 0 {
            return Ok(out);
        }
        self.for_each(cx, gt, &mut |g| {
            out.push(g);
            out.len() >= limit
        })?;
        Ok(out)
    }

    pub fn satisfies(&self, cx: GoalCtx<'_>, gt: &GoalType) -> Result<bool> {
        Ok(!self.solutions(cx, gt, 1)?.is_empty())
    }

    fn body(&self, cx: GoalCtx<'_>, gtenv: &GtEnv, lits: &[Literal], depth: usize, k: K<'_>) -> Result<bool> {
        match lits {
            [] => k(gtenv.clone()),
            [c] => self.literal(cx, gtenv, c, depth, k),
            [c, rest @ ..] => self.literal(cx, gtenv, c, depth, &mut |g2| {
                let merged = override_env(gtenv, &g2);
                self.body(cx, &merged, rest, depth, &mut |g3| k(override_env(&merged, &g3)))
            }),
        }
    }

    fn literal(&self, cx: GoalCtx<'_>, gtenv: &GtEnv, lit: &Literal, depth: usize, k: K<'_>) -> Result<bool> {
        if !lit.negated {
            return self.positive(cx, gtenv, lit, depth, k);
        }
        let mut found = false;
        self.positive(cx, gtenv, lit, depth, &mut |_| {
            found = true;
            Ok(true)
        })?;
        if found {
            Ok(false)
        } else {
            k(gtenv.clone())
        }
    }

    fn positive(&self, cx: GoalCtx<'_>, gtenv: &GtEnv, lit: &Literal, depth: usize, k: K<'_>) -> Result<bool> {
        if depth >= self.max_depth {
            return Err(GtError::DepthExceeded(self.max_depth));
        }
        // a ?-variable without a binding makes the literal fail
        if lit.args.iter().any(|a| matches!(a, GtArg::EnvRef(v) if !cx.env.contains_key(v))) {
            return Ok(false);
        }
        let mut known = false;
        let mut wrong_arity = None;
        for rule in self.defs.rules.iter().filter(|r| r.name == lit.pred) {
            if rule.formals.len() != lit.args.len() {
                wrong_arity = Some(rule.formals.len());
                continue;
            }
            known = true;
            let g0 = inst_gtenv(cx.goal, cx.env, gtenv, &rule.formals, &lit.args)?;
            let stop = self.body(cx, &g0, &rule.body.clauses, depth + 1, &mut |g1| {
                k(res_gtenv(&g1, &rule.formals, &lit.args)?)
            })?;
            if stop {
                return Ok(true);
            }
        }
        if let Some(atom) = self.atoms.get(&lit.pred) {
            if let Some(n) = atom.arity {
                if n != lit.args.len() {
                    return Err(GtError::Arity { pred: lit.pred.clone(), expected: n, got: lit.args.len() });
                }
            }
            known = true;
            let args: Vec<Resolved> = lit
                .args
                .iter()
                .map(|a| match lookup(cx.goal, cx.env, gtenv, a) {
                    Some(v) => Resolved::Val(v),
                    None => Resolved::Unbound(match a {
                        GtArg::GVar(v) => v.clone(),
                        other => other.to_string(),
                    }),
                })
                .collect();
            for g in (atom.eval)(gtenv, &args, &cx) {
                if k(g)? {
                    return Ok(true);
                }
            }
        }
        if !known {
            return Err(match wrong_arity {
                Some(n) => GtError::Arity { pred: lit.pred.clone(), expected: n, got: lit.args.len() },
                None => GtError::UnknownPredicate(lit.pred.clone()),
            });
        }
        Ok(false)
    }
}

/// Every solution of `gt` (bounded by `limit`).
pub fn eval_goaltype(
    defs: &GtDefs,
    atoms: &Atoms,
    goal: &Goal,
    env: &Env,
    gt: &GoalType,
    limit: usize,
) -> Result<Vec<GtEnv>> {
    Evaluator::new(defs, atoms).solutions(GoalCtx { goal, env }, gt, limit)
}

pub fn satisfies(defs: &GtDefs, atoms: &Atoms, goal: &Goal, env: &Env, gt: &GoalType) -> Result<bool> {
    Evaluator::new(defs, atoms).satisfies(GoalCtx { goal, env }, gt)
}
