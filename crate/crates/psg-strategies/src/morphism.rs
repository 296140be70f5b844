//! Driver for the combinator translation.

use std::sync::Arc;

use psg_goaltype::{Env, EnvVal, Focus};
use psg_kernel::{thm, Goal, Term, Thm};
use psg_psgraph::{Bundle, EvalState, Mode, RunOutcome};

use crate::{Result, StrategyError};

fn start_env() -> Env {
    let mut env = Env::new();
    env.insert("?cc".into(), EnvVal::FocusList(vec![Focus::parse("RIGHT_C").expect("focus")]));
    env
}

fn run(bundle: &Arc<Bundle>, concl: Term) -> Result<(RunOutcome, EvalState)> {
    let mut st = EvalState::init(bundle.clone(), Goal::concl_only(concl)?, start_env(), Mode::Automatic)?;
    let out = st.run();
    Ok((out, st))
}

/// `⊢ t = c` with `c` the point-free form of `t`, together with the state
/// of the translating run.
///
/// The strategy rewrites the right-hand side of `t = t`; the open goal it
/// leaves names `c`. A second run on `c = t` ends in `c = c`, which the
/// strategy closes, and the resulting theorem is flipped.
pub fn translate(bundle: &Arc<Bundle>, t: &Term) -> Result<(Thm, EvalState)> {
    let (out, st) = run(bundle, Term::mk_eq(t, t)?)?;
    let c = match out {
        RunOutcome::Proved(_) => return Ok((thm::refl(t), st)),
        RunOutcome::Open(gs) if gs.len() == 1 => match gs[0].goal.concl.dest_eq() {
            Some((_, c)) => c.clone(),
            None => return Err(StrategyError::Unexpected(format!("open goal {} is not an equation", gs[0].goal))),
        },
        other => return Err(StrategyError::Unexpected(format!("translation ended with {other:?}"))),
    };
    match run(bundle, Term::mk_eq(&c, t)?)?.0 {
        RunOutcome::Proved(th) => Ok((thm::eq_sym(&th)?, st)),
        other => Err(StrategyError::Unexpected(format!("checking run ended with {other:?}"))),
    }
}
