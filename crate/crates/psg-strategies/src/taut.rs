//! Driving the tautology strategies.

use std::sync::Arc;

use psg_goaltype::Env;
use psg_kernel::Goal;
use psg_psgraph::{Bundle, EvalState, Mode, RunOutcome};

use crate::Result;

pub const VERSIONS: [&str; 6] = ["taut_v1", "taut_v2", "taut_v3", "taut_v4", "taut_v5", "taut_final"];

/// Run `bundle` automatically on `goal` with an empty environment.
pub fn run(bundle: Arc<Bundle>, goal: Goal, max_steps: usize) -> Result<(RunOutcome, EvalState)> {
    let mut st = EvalState::init(bundle, goal, Env::new(), Mode::Automatic)?;
    st.max_steps = max_steps;
    let out = st.run();
    Ok((out, st))
}

/// `Some(theorem)` when the strategy proves the goal.
pub fn prove(bundle: Arc<Bundle>, goal: Goal) -> Result<Option<psg_kernel::Thm>> {
    Ok(match run(bundle, goal, psg_psgraph::eval::DEFAULT_MAX_STEPS)?.0 {
        RunOutcome::Proved(th) => Some(th),
        _ => None,
    })
}
