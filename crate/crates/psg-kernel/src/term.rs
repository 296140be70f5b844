//! Simply-typed lambda terms with paired abstraction.
//!
//! Terms are immutable and shared. Every constructor checks typing, so a
//! `Term` value is always well-typed.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{KernelError, Result};
use crate::sig;
use crate::ty::Ty;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var {
    pub name: Arc<str>,
    pub ty: Ty,
}

impl Var {
    pub fn new(name: &str, ty: Ty) -> Var {
        Var { name: Arc::from(name), ty }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TermKind {
    Var(Var),
    Const(Arc<str>),
    App(Term, Term),
    Abs(Var, Term),
    PairAbs(Var, Var, Term),
}

#[derive(PartialEq, Eq, Hash, Debug)]
struct Node {
    kind: TermKind,
    ty: Ty,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term(Arc<Node>);

impl Term {
    fn mk(kind: TermKind, ty: Ty) -> Term {
        Term(Arc::new(Node { kind, ty }))
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    pub fn ty(&self) -> &Ty {
        &self.0.ty
    }

    pub fn var(name: &str, ty: Ty) -> Term {
        Term::mk(TermKind::Var(Var::new(name, ty.clone())), ty)
    }

    pub fn of_var(v: &Var) -> Term {
        Term::mk(TermKind::Var(v.clone()), v.ty.clone())
    }

    pub fn constant(name: &str, ty: Ty) -> Result<Term> {
        let sch = sig::scheme(name).ok_or_else(|| KernelError::UnknownConstant(name.to_string()))?;
        if !sig::instance_of(&ty, &sch) {
            return Err(KernelError::Type(format!("{name} cannot have type {ty}")));
        }
        Ok(Term::mk(TermKind::Const(Arc::from(name)), ty))
    }

    pub fn app(f: &Term, x: &Term) -> Result<Term> {
        match f.ty().dest_fun() {
            Some((d, c)) if d == x.ty() => Ok(Term::mk(TermKind::App(f.clone(), x.clone()), c.clone())),
            Some((d, _)) => Err(KernelError::Type(format!(
                "cannot apply `{f}` expecting {d} to `{x}` of type {}",
                x.ty()
            ))),
            None => Err(KernelError::Type(format!("`{f}` of type {} is not a function", f.ty()))),
        }
    }

    pub fn abs(v: &Var, body: &Term) -> Term {
        let ty = Ty::fun(v.ty.clone(), body.ty().clone());
        Term::mk(TermKind::Abs(v.clone(), body.clone()), ty)
    }

    pub fn pair_abs(v1: &Var, v2: &Var, body: &Term) -> Result<Term> {
        if v1.name == v2.name {
            return Err(KernelError::Type(format!("paired abstraction binds `{}` twice", v1.name)));
        }
        let ty = Ty::fun(Ty::prod(v1.ty.clone(), v2.ty.clone()), body.ty().clone());
        Ok(Term::mk(TermKind::PairAbs(v1.clone(), v2.clone(), body.clone()), ty))
    }

    /// Apply `f` to several arguments.
    pub fn list_app(f: &Term, args: &[Term]) -> Result<Term> {
        let mut t = f.clone();
        for a in args {
            t = Term::app(&t, a)?;
        }
        Ok(t)
    }

    /// Constant `name` instantiated so that it accepts `args`, then applied.
    /// The result type is taken from `res` when the scheme leaves it open.
    pub fn mk_op(name: &str, args: &[Term], res: Ty) -> Result<Term> {
        let ty = Ty::curried(&args.iter().map(|a| a.ty().clone()).collect::<Vec<_>>(), res);
        let c = Term::constant(name, ty)?;
        Term::list_app(&c, args)
    }

    pub fn truth() -> Term {
        Term::mk(TermKind::Const(Arc::from(sig::TRUE)), Ty::Bool)
    }

    pub fn falsity() -> Term {
        Term::mk(TermKind::Const(Arc::from(sig::FALSE)), Ty::Bool)
    }

    pub fn mk_neg(t: &Term) -> Result<Term> {
        Term::mk_op(sig::NEG, &[t.clone()], Ty::Bool)
    }

    pub fn mk_binop(name: &str, a: &Term, b: &Term) -> Result<Term> {
        Term::mk_op(name, &[a.clone(), b.clone()], Ty::Bool)
    }

    pub fn mk_conj(a: &Term, b: &Term) -> Result<Term> {
        Term::mk_binop(sig::CONJ, a, b)
    }

    pub fn mk_disj(a: &Term, b: &Term) -> Result<Term> {
        Term::mk_binop(sig::DISJ, a, b)
    }

    pub fn mk_imp(a: &Term, b: &Term) -> Result<Term> {
        Term::mk_binop(sig::IMP, a, b)
    }

    pub fn mk_iff(a: &Term, b: &Term) -> Result<Term> {
        Term::mk_binop(sig::IFF, a, b)
    }

    pub fn mk_eq(a: &Term, b: &Term) -> Result<Term> {
        if a.ty() != b.ty() {
            return Err(KernelError::Type(format!(
                "equation sides differ in type: {} and {}",
                a.ty(),
                b.ty()
            )));
        }
        Term::mk_binop(sig::EQ, a, b)
    }

    pub fn mk_ite(c: &Term, a: &Term, b: &Term) -> Result<Term> {
        Term::mk_op(sig::ITE, &[c.clone(), a.clone(), b.clone()], a.ty().clone())
    }

    pub fn mk_forall(v: &Var, body: &Term) -> Result<Term> {
        Term::mk_op(sig::FORALL, &[Term::abs(v, body)], Ty::Bool)
    }

    pub fn mk_pair(a: &Term, b: &Term) -> Result<Term> {
        let ty = Ty::prod(a.ty().clone(), b.ty().clone());
        Term::mk_op(sig::PAIR, &[a.clone(), b.clone()], ty)
    }

    pub fn mk_comp(f: &Term, g: &Term) -> Result<Term> {
        let (a, _) = g.ty().dest_fun().ok_or_else(|| KernelError::Type(format!("`{g}` is not a function")))?;
        let (_, c) = f.ty().dest_fun().ok_or_else(|| KernelError::Type(format!("`{f}` is not a function")))?;
        Term::mk_op(sig::COMP, &[f.clone(), g.clone()], Ty::fun(a.clone(), c.clone()))
    }

    // ---- destructors

    pub fn as_var(&self) -> Option<&Var> {
        match self.kind() {
            TermKind::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn const_name(&self) -> Option<&str> {
        match self.kind() {
            TermKind::Const(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_const(&self, name: &str) -> bool {
        self.const_name() == Some(name)
    }

    pub fn is_var(&self) -> bool {
        matches!(self.kind(), TermKind::Var(_))
    }

    pub fn dest_app(&self) -> Option<(&Term, &Term)> {
        match self.kind() {
            TermKind::App(f, x) => Some((f, x)),
            _ => None,
        }
    }

    pub fn dest_abs(&self) -> Option<(&Var, &Term)> {
        match self.kind() {
            TermKind::Abs(v, b) => Some((v, b)),
            _ => None,
        }
    }

    /// Head and arguments of an application spine.
    pub fn strip_comb(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let TermKind::App(f, x) = t.kind() {
            args.push(x);
            t = f;
        }
        args.reverse();
        (t, args)
    }

    /// Name of the constant at the head of the left spine.
    pub fn head_const(&self) -> Option<&str> {
        self.strip_comb().0.const_name()
    }

    pub fn dest_unop(&self, name: &str) -> Option<&Term> {
        let (f, x) = self.dest_app()?;
        f.is_const(name).then_some(x)
    }

    pub fn dest_binop(&self, name: &str) -> Option<(&Term, &Term)> {
        let (fa, b) = self.dest_app()?;
        let (f, a) = fa.dest_app()?;
        f.is_const(name).then_some((a, b))
    }

    pub fn dest_neg(&self) -> Option<&Term> {
        self.dest_unop(sig::NEG)
    }

    pub fn dest_conj(&self) -> Option<(&Term, &Term)> {
        self.dest_binop(sig::CONJ)
    }

    pub fn dest_disj(&self) -> Option<(&Term, &Term)> {
        self.dest_binop(sig::DISJ)
    }

    pub fn dest_imp(&self) -> Option<(&Term, &Term)> {
        self.dest_binop(sig::IMP)
    }

    pub fn dest_iff(&self) -> Option<(&Term, &Term)> {
        self.dest_binop(sig::IFF)
    }

    pub fn dest_eq(&self) -> Option<(&Term, &Term)> {
        self.dest_binop(sig::EQ)
    }

    pub fn dest_ite(&self) -> Option<(&Term, &Term, &Term)> {
        let (h, args) = self.strip_comb();
        if h.is_const(sig::ITE) && args.len() == 3 {
            Some((args[0], args[1], args[2]))
        } else {
            None
        }
    }

    pub fn dest_forall(&self) -> Option<(&Var, &Term)> {
        self.dest_unop(sig::FORALL)?.dest_abs()
    }

    pub fn dest_pair(&self) -> Option<(&Term, &Term)> {
        self.dest_binop(sig::PAIR)
    }

    pub fn dest_comp(&self) -> Option<(&Term, &Term)> {
        self.dest_binop(sig::COMP)
    }

    // ---- variables

    /// Free variables in first-occurrence order.
    pub fn frees(&self) -> Vec<Var> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_frees(&mut bound, &mut out);
        out
    }

    fn collect_frees(&self, bound: &mut Vec<Var>, out: &mut Vec<Var>) {
        match self.kind() {
            TermKind::Var(v) => {
                if !bound.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            }
            TermKind::Const(_) => {}
            TermKind::App(f, x) => {
                f.collect_frees(bound, out);
                x.collect_frees(bound, out);
            }
            TermKind::Abs(v, b) => {
                bound.push(v.clone());
                b.collect_frees(bound, out);
                bound.pop();
            }
            TermKind::PairAbs(v1, v2, b) => {
                bound.push(v1.clone());
                bound.push(v2.clone());
                b.collect_frees(bound, out);
                bound.pop();
                bound.pop();
            }
        }
    }

    pub fn free_in(&self, v: &Var) -> bool {
        match self.kind() {
            TermKind::Var(w) => w == v,
            TermKind::Const(_) => false,
            TermKind::App(f, x) => f.free_in(v) || x.free_in(v),
            TermKind::Abs(w, b) => w != v && b.free_in(v),
            TermKind::PairAbs(w1, w2, b) => w1 != v && w2 != v && b.free_in(v),
        }
    }

    /// Names of all variables, free or bound.
    pub fn all_var_names(&self, out: &mut BTreeSet<Arc<str>>) {
        match self.kind() {
            TermKind::Var(v) => {
                out.insert(v.name.clone());
            }
            TermKind::Const(_) => {}
            TermKind::App(f, x) => {
                f.all_var_names(out);
                x.all_var_names(out);
            }
            TermKind::Abs(v, b) => {
                out.insert(v.name.clone());
                b.all_var_names(out);
            }
            TermKind::PairAbs(v1, v2, b) => {
                out.insert(v1.name.clone());
                out.insert(v2.name.clone());
                b.all_var_names(out);
            }
        }
    }

    // ---- alpha equivalence

    pub fn aconv(&self, other: &Term) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        aconv_in(self, other, &mut Vec::new(), &mut Vec::new())
    }

    // ---- substitution

    /// Capture-avoiding parallel substitution of terms for free variables.
    pub fn subst(&self, theta: &[(Var, Term)]) -> Term {
        if theta.is_empty() {
            return self.clone();
        }
        match self.kind() {
            TermKind::Var(v) => theta
                .iter()
                .find(|(w, _)| w == v)
                .map(|(_, t)| t.clone())
                .unwrap_or_else(|| self.clone()),
            TermKind::Const(_) => self.clone(),
            TermKind::App(f, x) => {
                let f2 = f.subst(theta);
                let x2 = x.subst(theta);
                Term::mk(TermKind::App(f2, x2), self.ty().clone())
            }
            TermKind::Abs(v, b) => {
                let (vs, body) = subst_binder(&[v.clone()], b, theta);
                Term::abs(&vs[0], &body)
            }
            TermKind::PairAbs(v1, v2, b) => {
                let (vs, body) = subst_binder(&[v1.clone(), v2.clone()], b, theta);
                Term::mk(TermKind::PairAbs(vs[0].clone(), vs[1].clone(), body), self.ty().clone())
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self.kind() {
            TermKind::Var(_) | TermKind::Const(_) => 1,
            TermKind::App(f, x) => 1 + f.size() + x.size(),
            TermKind::Abs(_, b) | TermKind::PairAbs(_, _, b) => 1 + b.size(),
        }
    }
}

fn subst_binder(vs: &[Var], body: &Term, theta: &[(Var, Term)]) -> (Vec<Var>, Term) {
    let inner: Vec<(Var, Term)> = theta
        .iter()
        .filter(|(w, _)| !vs.contains(w) && body.free_in(w))
        .cloned()
        .collect();
    if inner.is_empty() {
        return (vs.to_vec(), body.clone());
    }
    let captured = |v: &Var| inner.iter().any(|(_, t)| t.free_in(v));
    if !vs.iter().any(captured) {
        return (vs.to_vec(), body.subst(&inner));
    }
    let mut avoid = BTreeSet::new();
    body.all_var_names(&mut avoid);
    for (w, t) in &inner {
        avoid.insert(w.name.clone());
        t.all_var_names(&mut avoid);
    }
    let mut renamed = Vec::new();
    let mut theta2 = inner.clone();
    for v in vs {
        if captured(v) {
            let fresh = variant(&v.name, &avoid);
            avoid.insert(Arc::from(fresh.as_str()));
            let nv = Var::new(&fresh, v.ty.clone());
            theta2.push((v.clone(), Term::of_var(&nv)));
            renamed.push(nv);
        } else {
            renamed.push(v.clone());
        }
    }
    (renamed, body.subst(&theta2))
}

/// Prime `name` until it avoids `avoid`.
pub fn variant(name: &str, avoid: &BTreeSet<Arc<str>>) -> String {
    let mut n = name.to_string();
    while avoid.contains(n.as_str()) {
        n.push('\'');
    }
    n
}

fn aconv_in(a: &Term, b: &Term, env_a: &mut Vec<Var>, env_b: &mut Vec<Var>) -> bool {
    if a.ty() != b.ty() {
        return false;
    }
    match (a.kind(), b.kind()) {
        (TermKind::Var(x), TermKind::Var(y)) => {
            let ix = env_a.iter().rposition(|v| v == x);
            let iy = env_b.iter().rposition(|v| v == y);
            match (ix, iy) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            }
        }
        (TermKind::Const(x), TermKind::Const(y)) => x == y,
        (TermKind::App(f, x), TermKind::App(g, y)) => {
            aconv_in(f, g, env_a, env_b) && aconv_in(x, y, env_a, env_b)
        }
        (TermKind::Abs(x, s), TermKind::Abs(y, t)) => {
            if x.ty != y.ty {
                return false;
            }
            env_a.push(x.clone());
            env_b.push(y.clone());
            let r = aconv_in(s, t, env_a, env_b);
            env_a.pop();
            env_b.pop();
            r
        }
        (TermKind::PairAbs(x1, x2, s), TermKind::PairAbs(y1, y2, t)) => {
            if x1.ty != y1.ty || x2.ty != y2.ty {
                return false;
            }
            env_a.push(x1.clone());
            env_a.push(x2.clone());
            env_b.push(y1.clone());
            env_b.push(y2.clone());
            let r = aconv_in(s, t, env_a, env_b);
            env_a.truncate(env_a.len() - 2);
            env_b.truncate(env_b.len() - 2);
            r
        }
        _ => false,
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::print_term(self))
    }
}

/// α-aware membership.
pub fn mem_alpha(t: &Term, ts: &[Term]) -> bool {
    ts.iter().any(|u| u.aconv(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: &str) -> Term {
        Term::var(n, Ty::Bool)
    }

    #[test]
    fn alpha_equivalence() {
        let x = Var::new("x", Ty::Bool);
        let y = Var::new("y", Ty::Bool);
        let t1 = Term::abs(&x, &Term::of_var(&x));
        let t2 = Term::abs(&y, &Term::of_var(&y));
        assert!(t1.aconv(&t2));
        let t3 = Term::abs(&x, &Term::of_var(&y));
        assert!(!t1.aconv(&t3));
    }

    #[test]
    fn subst_avoids_capture() {
        // (\y. x /\ y)[y/x] must rename the binder
        let x = Var::new("x", Ty::Bool);
        let y = Var::new("y", Ty::Bool);
        let body = Term::mk_conj(&Term::of_var(&x), &Term::of_var(&y)).unwrap();
        let lam = Term::abs(&y, &body);
        let r = lam.subst(&[(x.clone(), b("y"))]);
        let (bv, _) = r.dest_abs().unwrap();
        assert_ne!(&*bv.name, "y");
        assert!(r.free_in(&y));
    }

    #[test]
    fn app_type_error() {
        let c = Term::mk_conj(&b("A"), &b("B"));
        assert!(c.is_ok());
        let f = Term::abs(&Var::new("x", Ty::Bool), &b("x"));
        assert!(Term::mk_conj(&b("A"), &f).is_err());
    }
}
