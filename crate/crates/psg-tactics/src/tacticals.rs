//! Tactic combinators with proof composition.

use std::sync::Arc;

use psg_kernel::{proof, tactic, Goal, KernelError, Proof, Tactic, Thm};

use crate::error::tac_err;

pub fn all_tac() -> Tactic {
    tactic(|g| Ok((vec![g.clone()], proof(|mut ths| Ok(ths.remove(0))))))
}

pub fn fail_tac(msg: &str) -> Tactic {
    let msg = msg.to_string();
    tactic(move |_| tac_err(msg.clone()))
}

/// Apply `t1`, then `next(i, goal)` to the i-th subgoal.
fn then_with(t1: Tactic, next: Arc<dyn Fn(usize, &Goal) -> psg_kernel::Result<Tactic> + Send + Sync>) -> Tactic {
    tactic(move |g| {
        let (gs, p1) = t1(g)?;
        let mut all = Vec::new();
        let mut parts: Vec<(usize, Proof)> = Vec::new();
        for (i, h) in gs.iter().enumerate() {
            let (hs, p) = next(i, h)?(h)?;
            parts.push((hs.len(), p));
            all.extend(hs);
        }
        let prf = proof(move |ths: Vec<Thm>| {
            let mut it = ths.into_iter();
            let mut mids = Vec::with_capacity(parts.len());
            for (n, p) in &parts {
                mids.push(p(it.by_ref().take(*n).collect())?);
            }
            p1(mids)
        });
        Ok((all, prf))
    })
}

pub fn then_tac(t1: Tactic, t2: Tactic) -> Tactic {
    then_with(t1, Arc::new(move |_, _| Ok(t2.clone())))
}

/// `t1 THEN_LIST [..]`: one tactic per subgoal; the counts must agree.
pub fn then_list(t1: Tactic, ts: Vec<Tactic>) -> Tactic {
    let n = ts.len();
    let check = t1.clone();
    let inner = then_with(t1, Arc::new(move |i, _| ts.get(i).cloned().ok_or_else(|| KernelError::Tactic("THEN_LIST: too many subgoals".into()))));
    tactic(move |g| {
        let (gs, _) = check(g)?;
        if gs.len() != n {
            return tac_err(format!("THEN_LIST: {} subgoal(s) for {n} tactic(s)", gs.len()));
        }
        inner(g)
    })
}

pub fn orelse(t1: Tactic, t2: Tactic) -> Tactic {
    tactic(move |g| t1(g).or_else(|_| t2(g)))
}

pub fn first_tac(ts: Vec<Tactic>) -> Tactic {
    tactic(move |g| {
        let mut last = KernelError::Tactic("FIRST: empty list".into());
        for t in &ts {
            match t(g) {
                Ok(r) => return Ok(r),
                Err(e) => last = e,
            }
        }
        Err(last)
    })
}

pub fn try_tac(t: Tactic) -> Tactic {
    orelse(t, all_tac())
}

/// Build the tactic from the goal it is applied to.
pub fn goal_tac(f: impl Fn(&Goal) -> psg_kernel::Result<Tactic> + Send + Sync + 'static) -> Tactic {
    tactic(move |g| f(g)?(g))
}
