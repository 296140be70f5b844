//! Tactics behind the reusable strategy patterns.

use psg_kernel::thm;
use psg_kernel::{proof, tactic, Goal, Tactic, Term};

use crate::error::tac_err;

/// Cut on `b`: `Γ ⊢ c` to `Γ ⊢ b` and `Γ, b ⊢ c`.
pub fn lemma_tac(b: Term) -> Tactic {
    tactic(move |g| {
        let mut hs = g.hyps.clone();
        if !g.has_hyp(&b) {
            hs.push(b.clone());
        }
        let b = b.clone();
        Ok((
            vec![Goal::new(g.hyps.clone(), b.clone())?, Goal::new(hs, g.concl.clone())?],
            proof(move |ths| thm::imp_elim(&thm::imp_intro(&b, &ths[1])?, &ths[0])),
        ))
    })
}

/// Case split on `a`: `Γ, a ⊢ c` and `Γ, ¬a ⊢ c`.
pub fn case_tac(a: Term) -> Tactic {
    tactic(move |g| {
        let na = Term::mk_neg(&a)?;
        let with = |t: &Term| {
            let mut hs = g.hyps.clone();
            if !g.has_hyp(t) {
                hs.push(t.clone());
            }
            Goal::new(hs, g.concl.clone())
        };
        let em = Term::mk_disj(&a, &na)?;
        Ok((vec![with(&a)?, with(&na)?], proof(move |ths| thm::disj_elim(&thm::taut_rule(&em)?, &ths[0], &ths[1]))))
    })
}

pub fn drop_asm_tac(h: Term) -> Tactic {
    tactic(move |g| {
        if !g.has_hyp(&h) {
            return tac_err(format!("`{h}` is not an assumption"));
        }
        let hs = g.hyps.iter().filter(|x| !x.aconv(&h)).cloned().collect();
        Ok((vec![Goal::new(hs, g.concl.clone())?], proof(|mut ths| Ok(ths.remove(0)))))
    })
}

/// Close `⊢ t = t'` when the sides are α-equal.
pub fn refl_tac() -> Tactic {
    tactic(|g| match g.concl.dest_eq() {
        Some((l, r)) if l.aconv(r) => {
            let l = l.clone();
            Ok((vec![], proof(move |_| Ok(thm::refl(&l)))))
        }
        _ => tac_err(format!("`{}` is not a reflexive equation", g.concl)),
    })
}
