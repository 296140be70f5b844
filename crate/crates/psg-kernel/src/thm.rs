//! Theorems. A `Thm` can only be produced by the rules in this module.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{rule_err, KernelError, Result};
use crate::sig;
use crate::taut;
use crate::term::{mem_alpha, variant, Term, TermKind, Var};
use crate::ty::Ty;

#[derive(Clone, Debug)]
pub struct Thm {
    hyps: Vec<Term>,
    concl: Term,
}

impl Thm {
    fn new(hyps: Vec<Term>, concl: Term) -> Thm {
        let mut hs: Vec<Term> = Vec::with_capacity(hyps.len());
        for h in hyps {
            if !mem_alpha(&h, &hs) {
                hs.push(h);
            }
        }
        Thm { hyps: hs, concl }
    }

    pub fn hyps(&self) -> &[Term] {
        &self.hyps
    }

    pub fn concl(&self) -> &Term {
        &self.concl
    }
}

impl fmt::Display for Thm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hs: Vec<String> = self.hyps.iter().map(|h| h.to_string()).collect();
        if hs.is_empty() {
            write!(f, "|- {}", self.concl)
        } else {
            write!(f, "{} |- {}", hs.join(", "), self.concl)
        }
    }
}

fn union(a: &[Term], b: &[Term]) -> Vec<Term> {
    a.iter().chain(b.iter()).cloned().collect()
}

fn remove(hs: &[Term], t: &Term) -> Vec<Term> {
    hs.iter().filter(|h| !h.aconv(t)).cloned().collect()
}

fn need_bool(rule: &'static str, t: &Term) -> Result<()> {
    if t.ty().is_bool() {
        Ok(())
    } else {
        rule_err(rule, format!("`{t}` has type {}, not Bool", t.ty()))
    }
}

fn dest_equation<'a>(rule: &'static str, th: &'a Thm) -> Result<(&'a Term, &'a Term)> {
    th.concl
        .dest_eq()
        .ok_or_else(|| KernelError::Rule { rule, msg: format!("`{}` is not an equation", th.concl) })
}

// ---- equality

/// `⊢ t = t`
pub fn refl(t: &Term) -> Thm {
    Thm::new(vec![], Term::mk_eq(t, t).expect("refl"))
}

/// `⊢ (λx. b) a = b[a/x]`, and the paired form `⊢ (λ(x,y). b) (a1, a2) = b[a1/x, a2/y]`.
pub fn beta_conv(t: &Term) -> Result<Thm> {
    let (f, a) = match t.dest_app() {
        Some(p) => p,
        None => return rule_err("beta_conv", format!("`{t}` is not a redex")),
    };
    let reduct = match f.kind() {
        TermKind::Abs(v, body) => body.subst(&[(v.clone(), a.clone())]),
        TermKind::PairAbs(v1, v2, body) => match a.dest_pair() {
            Some((a1, a2)) => body.subst(&[(v1.clone(), a1.clone()), (v2.clone(), a2.clone())]),
            None => return rule_err("beta_conv", format!("`{a}` is not a pair")),
        },
        _ => return rule_err("beta_conv", format!("`{t}` is not a redex")),
    };
    Ok(Thm::new(vec![], Term::mk_eq(t, &reduct)?))
}

/// `t ⊢ t`
pub fn asm_rule(t: &Term) -> Result<Thm> {
    need_bool("asm_rule", t)?;
    Ok(Thm::new(vec![t.clone()], t.clone()))
}

/// `Γ ⊢ s = t`, `Δ ⊢ t = u` gives `Γ ∪ Δ ⊢ s = u`.
pub fn eq_trans_rule(a: &Thm, b: &Thm) -> Result<Thm> {
    let (s, t1) = dest_equation("eq_trans_rule", a)?;
    let (t2, u) = dest_equation("eq_trans_rule", b)?;
    if !t1.aconv(t2) {
        return rule_err("eq_trans_rule", format!("middle terms differ: `{t1}` and `{t2}`"));
    }
    Ok(Thm::new(union(&a.hyps, &b.hyps), Term::mk_eq(s, u)?))
}

/// `Γ ⊢ s = t` gives `Γ ⊢ t = s`.
pub fn eq_sym(th: &Thm) -> Result<Thm> {
    let (s, t) = dest_equation("eq_sym", th)?;
    Ok(Thm::new(th.hyps.clone(), Term::mk_eq(t, s)?))
}

/// `Γ ⊢ f = g`, `Δ ⊢ a = b` gives `Γ ∪ Δ ⊢ f a = g b`.
pub fn mk_comb(thf: &Thm, tha: &Thm) -> Result<Thm> {
    let (f, g) = dest_equation("mk_comb", thf)?;
    let (a, b) = dest_equation("mk_comb", tha)?;
    let lhs = Term::app(f, a)?;
    let rhs = Term::app(g, b)?;
    Ok(Thm::new(union(&thf.hyps, &tha.hyps), Term::mk_eq(&lhs, &rhs)?))
}

/// `Γ ⊢ t = u` gives `Γ ⊢ (λv. t) = (λv. u)` when `v` is not free in `Γ`.
pub fn abs_rule(v: &Var, th: &Thm) -> Result<Thm> {
    let (t, u) = dest_equation("abs_rule", th)?;
    if th.hyps.iter().any(|h| h.free_in(v)) {
        return rule_err("abs_rule", format!("`{}` is free in the hypotheses", v.name));
    }
    Ok(Thm::new(th.hyps.clone(), Term::mk_eq(&Term::abs(v, t), &Term::abs(v, u))?))
}

/// Paired-abstraction congruence.
pub fn pair_abs_rule(v1: &Var, v2: &Var, th: &Thm) -> Result<Thm> {
    let (t, u) = dest_equation("pair_abs_rule", th)?;
    if th.hyps.iter().any(|h| h.free_in(v1) || h.free_in(v2)) {
        return rule_err("pair_abs_rule", "bound variable free in the hypotheses");
    }
    let l = Term::pair_abs(v1, v2, t)?;
    let r = Term::pair_abs(v1, v2, u)?;
    Ok(Thm::new(th.hyps.clone(), Term::mk_eq(&l, &r)?))
}

/// `Γ ⊢ a = b` (or `a ⇔ b`), `Δ ⊢ a` gives `Γ ∪ Δ ⊢ b`.
pub fn eq_mp(eq: &Thm, th: &Thm) -> Result<Thm> {
    let (a, b) = match eq.concl.dest_eq().or_else(|| eq.concl.dest_iff()) {
        Some(p) => p,
        None => return rule_err("eq_mp", format!("`{}` is not an equation", eq.concl)),
    };
    need_bool("eq_mp", a)?;
    if !a.aconv(&th.concl) {
        return rule_err("eq_mp", format!("`{}` does not match `{a}`", th.concl));
    }
    Ok(Thm::new(union(&eq.hyps, &th.hyps), b.clone()))
}

/// `Γ ⊢ a ⇔ b` gives `Γ ⊢ a = b`.
pub fn eq_of_iff(th: &Thm) -> Result<Thm> {
    match th.concl.dest_iff() {
        Some((a, b)) => Ok(Thm::new(th.hyps.clone(), Term::mk_eq(a, b)?)),
        None => rule_err("eq_of_iff", format!("`{}` is not a bi-implication", th.concl)),
    }
}

/// `Γ ⊢ a = b` at Bool gives `Γ ⊢ a ⇔ b`.
pub fn iff_of_eq(th: &Thm) -> Result<Thm> {
    let (a, b) = dest_equation("iff_of_eq", th)?;
    need_bool("iff_of_eq", a)?;
    Ok(Thm::new(th.hyps.clone(), Term::mk_iff(a, b)?))
}

// ---- quantifiers

/// `Γ ⊢ ∀x. p` gives `Γ ⊢ p[t/x]`.
pub fn spec(t: &Term, th: &Thm) -> Result<Thm> {
    let (v, body) = match th.concl.dest_forall() {
        Some(p) => p,
        None => return rule_err("spec", format!("`{}` is not universally quantified", th.concl)),
    };
    if &v.ty != t.ty() {
        return rule_err("spec", format!("`{t}` has type {}, expected {}", t.ty(), v.ty));
    }
    Ok(Thm::new(th.hyps.clone(), body.subst(&[(v.clone(), t.clone())])))
}

/// `Γ ⊢ p` gives `Γ ⊢ ∀v. p` when `v` is not free in `Γ`.
pub fn gen(v: &Var, th: &Thm) -> Result<Thm> {
    if th.hyps.iter().any(|h| h.free_in(v)) {
        return rule_err("gen", format!("`{}` is free in the hypotheses", v.name));
    }
    Ok(Thm::new(th.hyps.clone(), Term::mk_forall(v, &th.concl)?))
}

// ---- tautologies

/// `⊢ t` for a propositional tautology, admitted after a truth-table check.
pub fn taut_rule(t: &Term) -> Result<Thm> {
    need_bool("taut_rule", t)?;
    match taut::counterexample(&[], t)? {
        None => Ok(Thm::new(vec![], t.clone())),
        Some(v) => Err(KernelError::NotTautology(v)),
    }
}

// ---- natural deduction

pub fn truth_intro() -> Thm {
    Thm::new(vec![], Term::truth())
}

pub fn conj_intro(a: &Thm, b: &Thm) -> Result<Thm> {
    Ok(Thm::new(union(&a.hyps, &b.hyps), Term::mk_conj(&a.concl, &b.concl)?))
}

pub fn conj_elim_l(th: &Thm) -> Result<Thm> {
    match th.concl.dest_conj() {
        Some((a, _)) => Ok(Thm::new(th.hyps.clone(), a.clone())),
        None => rule_err("conj_elim_l", format!("`{}` is not a conjunction", th.concl)),
    }
}

pub fn conj_elim_r(th: &Thm) -> Result<Thm> {
    match th.concl.dest_conj() {
        Some((_, b)) => Ok(Thm::new(th.hyps.clone(), b.clone())),
        None => rule_err("conj_elim_r", format!("`{}` is not a conjunction", th.concl)),
    }
}

/// `Γ ⊢ a` gives `Γ ⊢ a ∨ b`.
pub fn disj_intro_l(th: &Thm, b: &Term) -> Result<Thm> {
    Ok(Thm::new(th.hyps.clone(), Term::mk_disj(&th.concl, b)?))
}

/// `Γ ⊢ b` gives `Γ ⊢ a ∨ b`.
pub fn disj_intro_r(a: &Term, th: &Thm) -> Result<Thm> {
    Ok(Thm::new(th.hyps.clone(), Term::mk_disj(a, &th.concl)?))
}

/// `Γ ⊢ a ∨ b`, `Δ1 ⊢ c`, `Δ2 ⊢ c` gives `Γ ∪ (Δ1 - a) ∪ (Δ2 - b) ⊢ c`.
pub fn disj_elim(or: &Thm, th1: &Thm, th2: &Thm) -> Result<Thm> {
    let (a, b) = match or.concl.dest_disj() {
        Some(p) => p,
        None => return rule_err("disj_elim", format!("`{}` is not a disjunction", or.concl)),
    };
    if !th1.concl.aconv(&th2.concl) {
        return rule_err("disj_elim", format!("cases conclude `{}` and `{}`", th1.concl, th2.concl));
    }
    let hs = union(&or.hyps, &union(&remove(&th1.hyps, a), &remove(&th2.hyps, b)));
    Ok(Thm::new(hs, th1.concl.clone()))
}

/// `Γ ⊢ b` gives `Γ - a ⊢ a ⇒ b`.
pub fn imp_intro(a: &Term, th: &Thm) -> Result<Thm> {
    need_bool("imp_intro", a)?;
    Ok(Thm::new(remove(&th.hyps, a), Term::mk_imp(a, &th.concl)?))
}

/// `Γ ⊢ a ⇒ b`, `Δ ⊢ a` gives `Γ ∪ Δ ⊢ b`.
pub fn imp_elim(imp: &Thm, th: &Thm) -> Result<Thm> {
    let (a, b) = match imp.concl.dest_imp() {
        Some(p) => p,
        None => return rule_err("imp_elim", format!("`{}` is not an implication", imp.concl)),
    };
    if !a.aconv(&th.concl) {
        return rule_err("imp_elim", format!("`{}` does not match antecedent `{a}`", th.concl));
    }
    Ok(Thm::new(union(&imp.hyps, &th.hyps), b.clone()))
}

/// `⊢ a ⇒ b`, `⊢ b ⇒ a` gives `⊢ a ⇔ b`.
pub fn iff_intro(ab: &Thm, ba: &Thm) -> Result<Thm> {
    let (a, b) = match ab.concl.dest_imp() {
        Some(p) => p,
        None => return rule_err("iff_intro", format!("`{}` is not an implication", ab.concl)),
    };
    match ba.concl.dest_imp() {
        Some((b2, a2)) if b2.aconv(b) && a2.aconv(a) => {}
        _ => return rule_err("iff_intro", format!("`{}` is not the converse", ba.concl)),
    }
    Ok(Thm::new(union(&ab.hyps, &ba.hyps), Term::mk_iff(a, b)?))
}

/// `⊢ a ⇔ b` gives `⊢ a ⇒ b`.
pub fn iff_elim_l(th: &Thm) -> Result<Thm> {
    match th.concl.dest_iff() {
        Some((a, b)) => Ok(Thm::new(th.hyps.clone(), Term::mk_imp(a, b)?)),
        None => rule_err("iff_elim_l", format!("`{}` is not a bi-implication", th.concl)),
    }
}

/// `⊢ a ⇔ b` gives `⊢ b ⇒ a`.
pub fn iff_elim_r(th: &Thm) -> Result<Thm> {
    match th.concl.dest_iff() {
        Some((a, b)) => Ok(Thm::new(th.hyps.clone(), Term::mk_imp(b, a)?)),
        None => rule_err("iff_elim_r", format!("`{}` is not a bi-implication", th.concl)),
    }
}

/// `Γ ⊢ t`, `Δ ⊢ ¬t` gives `Γ ∪ Δ ⊢ u`.
pub fn neg_elim(th: &Thm, nth: &Thm, u: &Term) -> Result<Thm> {
    need_bool("neg_elim", u)?;
    match nth.concl.dest_neg() {
        Some(t) if t.aconv(&th.concl) => Ok(Thm::new(union(&th.hyps, &nth.hyps), u.clone())),
        _ => rule_err("neg_elim", format!("`{}` is not the negation of `{}`", nth.concl, th.concl)),
    }
}

/// `Γ ⊢ F` gives `Γ ⊢ u`.
pub fn falsity_elim(th: &Thm, u: &Term) -> Result<Thm> {
    need_bool("falsity_elim", u)?;
    if !th.concl.is_const(sig::FALSE) {
        return rule_err("falsity_elim", format!("`{}` is not F", th.concl));
    }
    Ok(Thm::new(th.hyps.clone(), u.clone()))
}

/// Step into a subterm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Rator,
    Rand,
    Body,
}

/// `Γ ⊢ l = r` and a term `t` whose subterm at `path` is `l` gives
/// `Γ ⊢ t = t'` with that one occurrence replaced by `r`.
pub fn subst_conv(eq: &Thm, t: &Term, path: &[Step]) -> Result<Thm> {
    let Some((&step, rest)) = path.split_first() else {
        let (l, _) = dest_equation("subst_conv", eq)?;
        if !l.aconv(t) {
            return rule_err("subst_conv", format!("`{t}` does not match `{l}`"));
        }
        return Ok(eq.clone());
    };
    match (step, t.kind()) {
        (Step::Rator, TermKind::App(f, x)) => mk_comb(&subst_conv(eq, f, rest)?, &refl(x)),
        (Step::Rand, TermKind::App(f, x)) => mk_comb(&refl(f), &subst_conv(eq, x, rest)?),
        (Step::Body, TermKind::Abs(v, b)) => abs_rule(v, &subst_conv(eq, b, rest)?),
        (Step::Body, TermKind::PairAbs(v1, v2, b)) => pair_abs_rule(v1, v2, &subst_conv(eq, b, rest)?),
        _ => rule_err("subst_conv", format!("no {step:?} position in `{t}`")),
    }
}

/// Rules by name, for generic drivers and fuzzing.
pub fn nd_rule(id: &str, thms: &[Thm], terms: &[Term]) -> Result<Thm> {
    let th = |i: usize| {
        thms.get(i).ok_or_else(|| KernelError::Rule { rule: "nd_rule", msg: format!("{id}: missing theorem {i}") })
    };
    let tm = |i: usize| {
        terms.get(i).ok_or_else(|| KernelError::Rule { rule: "nd_rule", msg: format!("{id}: missing term {i}") })
    };
    match id {
        "conj_intro" => conj_intro(th(0)?, th(1)?),
        "conj_elim_l" => conj_elim_l(th(0)?),
        "conj_elim_r" => conj_elim_r(th(0)?),
        "disj_intro_l" => disj_intro_l(th(0)?, tm(0)?),
        "disj_intro_r" => disj_intro_r(tm(0)?, th(0)?),
        "disj_elim" => disj_elim(th(0)?, th(1)?, th(2)?),
        "imp_intro" => imp_intro(tm(0)?, th(0)?),
        "imp_elim" => imp_elim(th(0)?, th(1)?),
        "iff_intro" => iff_intro(th(0)?, th(1)?),
        "iff_elim_l" => iff_elim_l(th(0)?),
        "iff_elim_r" => iff_elim_r(th(0)?),
        "neg_elim" => neg_elim(th(0)?, th(1)?, tm(0)?),
        "truth_intro" => Ok(truth_intro()),
        "falsity_elim" => falsity_elim(th(0)?, tm(0)?),
        "eq_sym" => eq_sym(th(0)?),
        "eq_trans" => eq_trans_rule(th(0)?, th(1)?),
        "eq_mp" => eq_mp(th(0)?, th(1)?),
        "asm_rule" => asm_rule(tm(0)?),
        "refl" => Ok(refl(tm(0)?)),
        "taut_rule" => taut_rule(tm(0)?),
        other => rule_err("nd_rule", format!("unknown rule `{other}`")),
    }
}

pub const ND_RULES: &[&str] = &[
    "conj_intro",
    "conj_elim_l",
    "conj_elim_r",
    "disj_intro_l",
    "disj_intro_r",
    "disj_elim",
    "imp_intro",
    "imp_elim",
    "iff_intro",
    "iff_elim_l",
    "iff_elim_r",
    "neg_elim",
    "truth_intro",
    "falsity_elim",
    "eq_sym",
    "eq_trans",
    "eq_mp",
    "asm_rule",
    "refl",
    "taut_rule",
];

// ---- combinator equations

/// Equations between λ-abstractions and combinator terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comb {
    /// `(λx. x) = I`
    I,
    /// `(λx. t) = K t` when `x` is not free in `t`
    K,
    /// `(λx. (t1, t2)) = ⟨λx. t1, λx. t2⟩`
    Pair,
    /// `(λx. f t) = f ∘ (λx. t)`
    Unary,
    /// `(λx. g t1 t2) = Uncurry g ∘ ⟨λx. t1, λx. t2⟩`
    Binary,
    /// `(λx. h t j) = (λx. h x j) ∘ (λx. t)` with `j` a constant
    Param,
    /// `f ∘ I = f`
    Simp,
    /// `(λ(x, y). t) = λp. t[π1 p/x, π2 p/y]`
    Unpair,
}

fn not_free(rule: &'static str, v: &Var, t: &Term) -> Result<()> {
    if t.free_in(v) {
        rule_err(rule, format!("`{}` occurs in `{t}`", v.name))
    } else {
        Ok(())
    }
}

fn mk_fork(f: &Term, g: &Term) -> Result<Term> {
    let (a, b) = f.ty().dest_fun().ok_or_else(|| KernelError::Type(format!("`{f}` is not a function")))?;
    let (_, c) = g.ty().dest_fun().ok_or_else(|| KernelError::Type(format!("`{g}` is not a function")))?;
    let res = Ty::fun(a.clone(), Ty::prod(b.clone(), c.clone()));
    Term::mk_op(sig::FORK, &[Term::mk_pair(f, g)?], res)
}

/// `⊢ t = t'` for the combinator equation `rule` with left-hand side `t`.
pub fn comb_rule(rule: Comb, t: &Term) -> Result<Thm> {
    let name = "comb_rule";
    let abs = || t.dest_abs().ok_or_else(|| KernelError::Rule { rule: name, msg: format!("`{t}` is not an abstraction") });
    let rhs = match rule {
        Comb::I => {
            let (x, b) = abs()?;
            if b.as_var() != Some(x) {
                return rule_err(name, format!("`{t}` is not the identity"));
            }
            Term::constant(sig::I, t.ty().clone())?
        }
        Comb::K => {
            let (x, b) = abs()?;
            not_free(name, x, b)?;
            Term::mk_op(sig::K, &[b.clone()], t.ty().clone())?
        }
        Comb::Pair => {
            let (x, b) = abs()?;
            let (t1, t2) = b.dest_pair().ok_or_else(|| KernelError::Rule { rule: name, msg: format!("`{b}` is not a pair") })?;
            mk_fork(&Term::abs(x, t1), &Term::abs(x, t2))?
        }
        Comb::Unary => {
            let (x, b) = abs()?;
            let (f, a) = b.dest_app().ok_or_else(|| KernelError::Rule { rule: name, msg: format!("`{b}` is not an application") })?;
            not_free(name, x, f)?;
            Term::mk_comp(f, &Term::abs(x, a))?
        }
        Comb::Binary => {
            let (x, b) = abs()?;
            let (g, args) = b.strip_comb();
            if args.len() != 2 {
                return rule_err(name, format!("`{b}` is not a binary application"));
            }
            not_free(name, x, g)?;
            let (ga, gr) = g.ty().dest_fun().unwrap();
            let (gb, gc) = gr.dest_fun().unwrap();
            let unc_ty = Ty::fun(Ty::prod(ga.clone(), gb.clone()), gc.clone());
            let unc = Term::mk_op(sig::UNCURRY, &[g.clone()], unc_ty)?;
            Term::mk_comp(&unc, &mk_fork(&Term::abs(x, args[0]), &Term::abs(x, args[1]))?)?
        }
        Comb::Param => {
            let (x, b) = abs()?;
            let (h, args) = b.strip_comb();
            if args.len() != 2 {
                return rule_err(name, format!("`{b}` is not a binary application"));
            }
            if args[1].const_name().is_none() {
                return rule_err(name, format!("`{}` is not a constant", args[1]));
            }
            not_free(name, x, h)?;
            // the operand need not share the bound variable's type (after unpairing it does not)
            let y = if x.ty == *args[0].ty() {
                x.clone()
            } else {
                let avoid: BTreeSet<Arc<str>> = h.frees().into_iter().chain(args[1].frees()).map(|v| v.name).collect();
                Var::new(&variant("x", &avoid), args[0].ty().clone())
            };
            let inner = Term::abs(&y, &Term::list_app(h, &[Term::of_var(&y), args[1].clone()])?);
            Term::mk_comp(&inner, &Term::abs(x, args[0]))?
        }
        Comb::Simp => {
            let (f, i) = t.dest_comp().ok_or_else(|| KernelError::Rule { rule: name, msg: format!("`{t}` is not a composition") })?;
            if !i.is_const(sig::I) {
                return rule_err(name, format!("`{i}` is not I"));
            }
            f.clone()
        }
        Comb::Unpair => {
            let TermKind::PairAbs(x, y, b) = t.kind() else {
                return rule_err(name, format!("`{t}` is not a paired abstraction"));
            };
            let mut avoid = BTreeSet::new();
            t.all_var_names(&mut avoid);
            let p = Var::new(&variant("p", &avoid), Ty::prod(x.ty.clone(), y.ty.clone()));
            let pv = Term::of_var(&p);
            let fst = Term::mk_op(sig::FST, &[pv.clone()], x.ty.clone())?;
            let snd = Term::mk_op(sig::SND, &[pv.clone()], y.ty.clone())?;
            Term::abs(&p, &b.subst(&[(x.clone(), fst), (y.clone(), snd)]))
        }
    };
    Ok(Thm::new(vec![], Term::mk_eq(t, &rhs)?))
}

/// Shared handle used by tactics that cache rewrite theorems.
pub type ThmRef = Arc<Thm>;
