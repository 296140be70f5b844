//! Conversions, conversion combinators and term focusing.

use std::sync::Arc;

use psg_goaltype::{Focus, FocusAtom};
use psg_kernel::thm::{self, eq_trans_rule, mk_comb, refl};
use psg_kernel::{proof, tactic, KernelError, Result, Tactic, Term, Thm};

/// `t` to `⊢ t = t'`.
pub type Conv = Arc<dyn Fn(&Term) -> Result<Thm> + Send + Sync>;

pub fn conv(f: impl Fn(&Term) -> Result<Thm> + Send + Sync + 'static) -> Conv {
    Arc::new(f)
}

fn fail<T>(msg: String) -> Result<T> {
    Err(KernelError::Tactic(msg))
}

fn rhs(th: &Thm) -> Result<Term> {
    match th.concl().dest_eq() {
        Some((_, r)) => Ok(r.clone()),
        None => fail(format!("conversion returned `{}`, not an equation", th.concl())),
    }
}

pub fn beta_c() -> Conv {
    conv(thm::beta_conv)
}

pub fn fail_c(msg: &str) -> Conv {
    let msg = msg.to_string();
    conv(move |_| fail(msg.clone()))
}

pub fn then_c(c1: Conv, c2: Conv) -> Conv {
    conv(move |t| {
        let th1 = c1(t)?;
        let th2 = c2(&rhs(&th1)?)?;
        eq_trans_rule(&th1, &th2)
    })
}

pub fn orelse_c(c1: Conv, c2: Conv) -> Conv {
    conv(move |t| c1(t).or_else(|_| c2(t)))
}

pub fn first_c(cs: Vec<Conv>) -> Conv {
    conv(move |t| {
        for c in &cs {
            if let Ok(th) = c(t) {
                return Ok(th);
            }
        }
        fail(format!("no conversion applies to `{t}`"))
    })
}

pub fn try_c(c: Conv) -> Conv {
    conv(move |t| c(t).or_else(|_| Ok(refl(t))))
}

const REPEAT_LIMIT: usize = 100_000;

/// Apply until failure; zero applications give `⊢ t = t`.
pub fn repeat_c(c: Conv) -> Conv {
    conv(move |t| {
        let mut acc = refl(t);
        for _ in 0..REPEAT_LIMIT {
            match c(&rhs(&acc)?) {
                Ok(th) => acc = eq_trans_rule(&acc, &th)?,
                Err(_) => return Ok(acc),
            }
        }
        fail("REPEAT_C: no fixpoint".into())
    })
}

/// Either side may fail, not both; when both succeed they are composed.
pub fn and_or_c(c1: Conv, c2: Conv) -> Conv {
    conv(move |t| match c1(t) {
        Ok(th1) => match c2(&rhs(&th1)?) {
            Ok(th2) => eq_trans_rule(&th1, &th2),
            Err(_) => Ok(th1),
        },
        Err(_) => c2(t),
    })
}

pub fn rand_c(c: Conv) -> Conv {
    conv(move |t| {
        let Some((f, x)) = t.dest_app() else { return fail(format!("RAND_C: `{t}` is not an application")) };
        mk_comb(&refl(f), &c(x)?)
    })
}

pub fn rator_c(c: Conv) -> Conv {
    conv(move |t| {
        let Some((f, x)) = t.dest_app() else { return fail(format!("RATOR_C: `{t}` is not an application")) };
        mk_comb(&c(f)?, &refl(x))
    })
}

/// Every operand along the application spine.
pub fn rands_c(c: Conv) -> Conv {
    conv(move |t| {
        let (head, args) = t.strip_comb();
        if args.is_empty() {
            return fail(format!("RANDS_C: `{t}` is not an application"));
        }
        let mut th = refl(head);
        for a in args {
            th = mk_comb(&th, &c(a)?)?;
        }
        Ok(th)
    })
}

/// Right operand of a binary operator application.
pub fn right_c(c: Conv) -> Conv {
    conv(move |t| {
        let (head, args) = t.strip_comb();
        if args.len() != 2 || head.const_name().is_none() {
            return fail(format!("RIGHT_C: `{t}` is not a binary operation"));
        }
        let (f, x) = t.dest_app().unwrap();
        mk_comb(&refl(f), &c(x)?)
    })
}

pub fn focus_atom(a: FocusAtom, c: Conv) -> Conv {
    match a {
        FocusAtom::RandC => rand_c(c),
        FocusAtom::RandsC => rands_c(c),
        FocusAtom::RightC => right_c(c),
        FocusAtom::RatorC => rator_c(c),
    }
}

/// `f1 o ... o fn` applied to `c`: `f1` navigates first.
pub fn focus(f: &Focus, c: Conv) -> Conv {
    f.0.iter().rev().fold(c, |acc, a| focus_atom(*a, acc))
}

/// The stack `[f1; ...; fn]` composed with `f1` outermost.
pub fn focus_list(fs: &[Focus], c: Conv) -> Conv {
    fs.iter().rev().fold(c, |acc, f| focus(f, acc))
}

/// Replace the conclusion `t` by `t'` using `⊢ t = t'`.
pub fn conv_tac(c: Conv) -> Tactic {
    tactic(move |g| {
        let th = c(&g.concl)?;
        let (l, r) = th
            .concl()
            .dest_eq()
            .ok_or_else(|| KernelError::Tactic(format!("conversion returned `{}`", th.concl())))?;
        if !l.aconv(&g.concl) {
            return fail(format!("conversion rewrote `{l}`, not the conclusion"));
        }
        let new = psg_kernel::Goal::new(g.hyps.clone(), r.clone())?;
        let back = thm::eq_sym(&th)?;
        Ok((vec![new], proof(move |ths| thm::eq_mp(&back, &ths[0]))))
    })
}

pub fn lift_conv(fs: &[Focus], c: Conv) -> Tactic {
    conv_tac(focus_list(fs, c))
}
