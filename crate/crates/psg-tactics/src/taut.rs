//! Tautology tactics: the two rewrite systems, structural checks and the
//! connective introduction/elimination steps.

use std::sync::OnceLock;

use psg_kernel::term::{variant, TermKind};
use psg_kernel::thm::{self, Thm};
use psg_kernel::{parse_term, proof, tactic, Goal, Result, Tactic, Term, Var};

use crate::conv::{conv, conv_tac, Conv};
use crate::error::tac_err;
use crate::tacticals::{all_tac, first_tac, goal_tac, then_list, then_tac};

pub struct Rule {
    pub name: &'static str,
    vars: Vec<Var>,
    lhs: Term,
    th: Thm,
}

impl Rule {
    fn new(name: &'static str, src: &str) -> Rule {
        let th = thm::taut_rule(&parse_term(src).expect("rule parses")).expect("rule is a tautology");
        let mut vars = Vec::new();
        let mut body = th.concl().clone();
        while let Some((v, b)) = body.dest_forall() {
            vars.push(v.clone());
            body = b.clone();
        }
        let lhs = body.dest_iff().expect("rule is an equivalence").0.clone();
        Rule { name, vars, lhs, th }
    }

    pub fn statement(&self) -> &Thm {
        &self.th
    }

    /// `⊢ t = t'` when `t` is an instance of the left-hand side.
    pub fn apply(&self, t: &Term) -> Result<Thm> {
        let mut sub: Vec<(Var, Term)> = Vec::new();
        if !matches(&self.lhs, t, &self.vars, &mut sub) {
            return tac_err(format!("{} does not match `{t}`", self.name));
        }
        let mut th = self.th.clone();
        for v in &self.vars {
            let (_, val) = sub.iter().find(|(w, _)| w == v).expect("every rule variable occurs on the left");
            th = thm::spec(val, &th)?;
        }
        thm::eq_of_iff(&th)
    }
}

fn matches(pat: &Term, t: &Term, vars: &[Var], sub: &mut Vec<(Var, Term)>) -> bool {
    match pat.kind() {
        TermKind::Var(v) if vars.contains(v) => {
            if v.ty != *t.ty() {
                return false;
            }
            match sub.iter().find(|(w, _)| w == v) {
                Some((_, u)) => u.aconv(t),
                None => {
                    sub.push((v.clone(), t.clone()));
                    true
                }
            }
        }
        TermKind::App(f, x) => match t.dest_app() {
            Some((g, y)) => matches(f, g, vars, sub) && matches(x, y, vars, sub),
            None => false,
        },
        _ => pat == t,
    }
}

const NOT_RULES: [(&str, &str); 8] = [
    ("not_not", "!a. ~~a <=> a"),
    ("not_and", "!a b. ~(a /\\ b) <=> ~a \\/ ~b"),
    ("not_or", "!a b. ~(a \\/ b) <=> ~a /\\ ~b"),
    ("not_imp", "!a b. ~(a => b) <=> a /\\ ~b"),
    ("not_iff", "!a b. ~(a <=> b) <=> a /\\ ~b \\/ b /\\ ~a"),
    ("not_t", "~T <=> F"),
    ("not_f", "~F <=> T"),
    ("not_if", "!a b c. ~(if a then b else c) <=> (if a then ~b else ~c)"),
];
const IFF_RULE: (&str, &str) = ("iff", "!a b. (a <=> b) <=> (a => b) /\\ (b => a)");
const IF_RULE: (&str, &str) = ("local_if", "!a t1 t2. (if a then t1 else t2) <=> (a => t1) /\\ (~a => t2)");
const OR_RULES: [(&str, &str); 3] = [
    ("a_or_not_b", "!a b. a \\/ ~b <=> (b => a)"),
    ("not_a_or_b", "!a b. ~a \\/ b <=> (a => b)"),
    ("or", "!a b. a \\/ b <=> (~a => b)"),
];
const IMP_RULE: (&str, &str) = ("imp", "!a b. (a => b) <=> ~a \\/ b");

/// Conclusion rewrites: negations, `⇔`, `if`, then disjunctions (13 rules).
pub fn concl_rules() -> &'static [Rule] {
    static R: OnceLock<Vec<Rule>> = OnceLock::new();
    R.get_or_init(|| {
        NOT_RULES.iter().chain([&IFF_RULE, &IF_RULE]).chain(OR_RULES.iter()).map(|(n, s)| Rule::new(n, s)).collect()
    })
}

/// Hypothesis rewrites: as above with the disjunction rules replaced by `imp` (11 rules).
pub fn asm_rules() -> &'static [Rule] {
    static R: OnceLock<Vec<Rule>> = OnceLock::new();
    R.get_or_init(|| NOT_RULES.iter().chain([&IFF_RULE, &IF_RULE, &IMP_RULE]).map(|(n, s)| Rule::new(n, s)).collect())
}

/// First rule of the list that applies at the top of the term.
pub fn rules_conv(rules: &'static [Rule]) -> Conv {
    conv(move |t| {
        for r in rules {
            if let Ok(th) = r.apply(t) {
                return Ok(th);
            }
        }
        tac_err(format!("no rewrite applies to `{t}`"))
    })
}

pub fn taut_strip_concl_conv() -> Conv {
    rules_conv(concl_rules())
}

pub fn taut_strip_asm_conv() -> Conv {
    rules_conv(asm_rules())
}

fn concl_subset(range: std::ops::Range<usize>) -> Conv {
    rules_conv(&concl_rules()[range])
}

pub fn strip_not_concl_tac() -> Tactic {
    conv_tac(concl_subset(0..8))
}

pub fn strip_iff_concl_tac() -> Tactic {
    conv_tac(concl_subset(8..9))
}

pub fn strip_if_concl_tac() -> Tactic {
    conv_tac(concl_subset(9..10))
}

pub fn strip_or_concl_tac() -> Tactic {
    conv_tac(concl_subset(10..13))
}

// introduction steps on the conclusion

pub fn t_tac() -> Tactic {
    tactic(|g| {
        if !g.concl.is_const(psg_kernel::sig::TRUE) {
            return tac_err(format!("`{}` is not T", g.concl));
        }
        Ok((vec![], proof(|_| Ok(thm::truth_intro()))))
    })
}

pub fn conj_tac() -> Tactic {
    tactic(|g| {
        let Some((a, b)) = g.concl.dest_conj() else { return tac_err(format!("`{}` is not a conjunction", g.concl)) };
        Ok((
            vec![Goal::new(g.hyps.clone(), a.clone())?, Goal::new(g.hyps.clone(), b.clone())?],
            proof(|ths| thm::conj_intro(&ths[0], &ths[1])),
        ))
    })
}

fn add_hyp(hyps: &[Term], h: &Term) -> Vec<Term> {
    let mut out = hyps.to_vec();
    if !psg_kernel::term::mem_alpha(h, hyps) {
        out.push(h.clone());
    }
    out
}

/// `Γ ⊢ a ⇒ b` to `Γ, a ⊢ b`.
pub fn strip_imp_concl_tac() -> Tactic {
    tactic(|g| {
        let Some((a, b)) = g.concl.dest_imp() else { return tac_err(format!("`{}` is not an implication", g.concl)) };
        let a = a.clone();
        Ok((vec![Goal::new(add_hyp(&g.hyps, &a), b.clone())?], proof(move |ths| thm::imp_intro(&a, &ths[0]))))
    })
}

pub fn forall_tac() -> Tactic {
    tactic(|g| {
        let Some((v, body)) = g.concl.dest_forall() else { return tac_err(format!("`{}` is not universal", g.concl)) };
        let mut avoid = Default::default();
        for h in &g.hyps {
            h.all_var_names(&mut avoid);
        }
        g.concl.all_var_names(&mut avoid);
        let free_in_hyps = g.hyps.iter().any(|h| h.free_in(v));
        let x = if free_in_hyps { Var::new(&variant(&v.name, &avoid), v.ty.clone()) } else { v.clone() };
        let inst = body.subst(&[(v.clone(), Term::of_var(&x))]);
        Ok((vec![Goal::new(g.hyps.clone(), inst)?], proof(move |ths| thm::gen(&x, &ths[0]))))
    })
}

pub fn concl_in_asms_tac() -> Tactic {
    tactic(|g| {
        if !g.has_hyp(&g.concl) {
            return tac_err(format!("`{}` is not among the assumptions", g.concl));
        }
        let c = g.concl.clone();
        Ok((vec![], proof(move |_| thm::asm_rule(&c))))
    })
}

// structural tautological forms

type Closer = Box<dyn Fn(&Term) -> Result<Thm> + Send + Sync>;

/// A proof of the goal when it has a structural form involving one of `cands`
/// (or a `T` conclusion).
fn structural(g: &Goal, cands: &[Term]) -> Option<Closer> {
    let asm = |t: &Term| thm::asm_rule(t);
    if g.concl.is_const(psg_kernel::sig::TRUE) {
        return Some(Box::new(|_| Ok(thm::truth_intro())));
    }
    for h in cands {
        let h = h.clone();
        if h.is_const(psg_kernel::sig::FALSE) {
            return Some(Box::new(move |c| thm::falsity_elim(&asm(&h)?, c)));
        }
        if h.aconv(&g.concl) {
            return Some(Box::new(move |_| asm(&h)));
        }
        if let Some(s) = h.dest_neg() {
            if g.has_hyp(s) {
                let s = s.clone();
                return Some(Box::new(move |c| thm::neg_elim(&asm(&s)?, &asm(&h)?, c)));
            }
        }
        if let Some(n) = g.hyps.iter().find(|n| n.dest_neg().is_some_and(|s| s.aconv(&h))) {
            let n = n.clone();
            return Some(Box::new(move |c| thm::neg_elim(&asm(&h)?, &asm(&n)?, c)));
        }
    }
    None
}

fn close_or_keep(g: &Goal, cands: &[Term]) -> Result<(Vec<Goal>, psg_kernel::Proof)> {
    match structural(g, cands) {
        Some(close) => {
            let c = g.concl.clone();
            Ok((vec![], proof(move |_| close(&c))))
        }
        None => all_tac()(g),
    }
}

/// Discharge the goal if it is in a structural form; otherwise leave it unchanged.
pub fn check_asm_tac() -> Tactic {
    tactic(|g| close_or_keep(g, &g.hyps))
}

/// As `check_asm_tac`, only considering hypotheses not among `ori` (up to α).
pub fn check_new_asms_tac(ori: Vec<Term>) -> Tactic {
    tactic(move |g| {
        let new: Vec<Term> = g.hyps.iter().filter(|h| !psg_kernel::term::mem_alpha(h, &ori)).cloned().collect();
        close_or_keep(g, &new)
    })
}

// elimination steps on a named hypothesis

fn hyp_index(g: &Goal, h: &Term) -> Result<usize> {
    match g.hyps.iter().position(|x| x.aconv(h)) {
        Some(i) => Ok(i),
        None => tac_err(format!("`{h}` is not an assumption")),
    }
}

/// Hypotheses with `h` replaced in place by `news` (dropping duplicates).
fn replace_hyp(g: &Goal, i: usize, news: &[Term]) -> Vec<Term> {
    let rest: Vec<Term> = g.hyps.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, t)| t.clone()).collect();
    let mut out: Vec<Term> = g.hyps[..i].to_vec();
    for n in news {
        if !psg_kernel::term::mem_alpha(n, &rest) && !psg_kernel::term::mem_alpha(n, &out) {
            out.push(n.clone());
        }
    }
    out.extend(g.hyps[i + 1..].iter().cloned());
    out
}

/// From `Γ, n1..nk ⊢ c` and `h ⊢ ni` obtain `Γ, h ⊢ c`.
fn discharge(mut th: Thm, derived: &[(Term, Thm)]) -> Result<Thm> {
    for (n, pf) in derived {
        th = thm::imp_elim(&thm::imp_intro(n, &th)?, pf)?;
    }
    Ok(th)
}

pub fn elim_conj_asm_tac(h: Term) -> Tactic {
    tactic(move |g| {
        let i = hyp_index(g, &h)?;
        let Some((a, b)) = h.dest_conj() else { return tac_err(format!("`{h}` is not a conjunction")) };
        let (a, b, h) = (a.clone(), b.clone(), h.clone());
        let goal = Goal::new(replace_hyp(g, i, &[a.clone(), b.clone()]), g.concl.clone())?;
        Ok((
            vec![goal],
            proof(move |ths| {
                let ah = thm::asm_rule(&h)?;
                discharge(ths[0].clone(), &[(a.clone(), thm::conj_elim_l(&ah)?), (b.clone(), thm::conj_elim_r(&ah)?)])
            }),
        ))
    })
}

pub fn elim_disj_asm_tac(h: Term) -> Tactic {
    tactic(move |g| {
        let i = hyp_index(g, &h)?;
        let Some((a, b)) = h.dest_disj() else { return tac_err(format!("`{h}` is not a disjunction")) };
        let ga = Goal::new(replace_hyp(g, i, &[a.clone()]), g.concl.clone())?;
        let gb = Goal::new(replace_hyp(g, i, &[b.clone()]), g.concl.clone())?;
        let h = h.clone();
        Ok((vec![ga, gb], proof(move |ths| thm::disj_elim(&thm::asm_rule(&h)?, &ths[0], &ths[1]))))
    })
}

fn elim_rw_asm_tac(rules: &'static [Rule], h: Term) -> Tactic {
    let c = rules_conv(rules);
    tactic(move |g| {
        let i = hyp_index(g, &h)?;
        let eq = c(&h)?;
        let h2 = eq.concl().dest_eq().expect("rewrite gives an equation").1.clone();
        let goal = Goal::new(replace_hyp(g, i, &[h2.clone()]), g.concl.clone())?;
        let h = h.clone();
        Ok((
            vec![goal],
            proof(move |ths| discharge(ths[0].clone(), &[(h2.clone(), thm::eq_mp(&eq, &thm::asm_rule(&h)?)?)])),
        ))
    })
}

pub fn elim_not_asm_tac(h: Term) -> Tactic {
    elim_rw_asm_tac(&asm_rules()[0..8], h)
}

pub fn elim_iff_asm_tac(h: Term) -> Tactic {
    elim_rw_asm_tac(&asm_rules()[8..9], h)
}

pub fn elim_if_asm_tac(h: Term) -> Tactic {
    elim_rw_asm_tac(&asm_rules()[9..10], h)
}

pub fn elim_imp_asm_tac(h: Term) -> Tactic {
    elim_rw_asm_tac(&asm_rules()[10..11], h)
}

/// Strip hypothesis `h` completely, checking each resulting literal.
pub fn strip_asm_tac(h: Term) -> Tactic {
    goal_tac(move |g| {
        if !g.has_hyp(&h) {
            return Ok(all_tac());
        }
        if let Some((a, b)) = h.dest_conj() {
            let rest = then_tac(strip_asm_tac(a.clone()), strip_asm_tac(b.clone()));
            return Ok(then_tac(elim_conj_asm_tac(h.clone()), rest));
        }
        if let Some((a, b)) = h.dest_disj() {
            return Ok(then_list(elim_disj_asm_tac(h.clone()), vec![strip_asm_tac(a.clone()), strip_asm_tac(b.clone())]));
        }
        if let Ok(eq) = taut_strip_asm_conv()(&h) {
            let h2 = eq.concl().dest_eq().expect("equation").1.clone();
            return Ok(then_tac(elim_rw_asm_tac(asm_rules(), h.clone()), strip_asm_tac(h2)));
        }
        let lit = h.clone();
        Ok(tactic(move |g| close_or_keep(g, std::slice::from_ref(&lit))))
    })
}

/// Implication introduction with the new assumption stripped to literals.
pub fn imp_strip_tac() -> Tactic {
    goal_tac(|g| {
        let Some((a, _)) = g.concl.dest_imp() else { return tac_err(format!("`{}` is not an implication", g.concl)) };
        Ok(then_tac(strip_imp_concl_tac(), strip_asm_tac(a.clone())))
    })
}

/// One step of the monolithic tautology tactic.
pub fn taut_strip_tac() -> Tactic {
    first_tac(vec![conj_tac(), imp_strip_tac(), t_tac(), conv_tac(taut_strip_concl_conv()), concl_in_asms_tac()])
}
