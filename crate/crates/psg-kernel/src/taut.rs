//! Truth-table evaluation of the propositional fragment.
//!
//! Connectives `T F ¬ ∧ ∨ ⇒ ⇔`, `=` and `ite` at type Bool, and `∀` over
//! Bool are interpreted. Every other Bool-typed subterm is an opaque atom
//! (atoms are compared up to α-equivalence).

use crate::error::{KernelError, Result};
use crate::sig;
use crate::term::{Term, TermKind, Var};
use crate::ty::Ty;

pub const MAX_VARS: usize = 24;

#[derive(Debug, Clone)]
enum Prop {
    Const(bool),
    Atom(usize),
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    Imp(Box<Prop>, Box<Prop>),
    Iff(Box<Prop>, Box<Prop>),
    Ite(Box<Prop>, Box<Prop>, Box<Prop>),
}

impl Prop {
    fn eval(&self, v: u32) -> bool {
        match self {
            Prop::Const(b) => *b,
            Prop::Atom(i) => v & (1 << i) != 0,
            Prop::Not(p) => !p.eval(v),
            Prop::And(a, b) => a.eval(v) && b.eval(v),
            Prop::Or(a, b) => a.eval(v) || b.eval(v),
            Prop::Imp(a, b) => !a.eval(v) || b.eval(v),
            Prop::Iff(a, b) => a.eval(v) == b.eval(v),
            Prop::Ite(c, a, b) => {
                if c.eval(v) {
                    a.eval(v)
                } else {
                    b.eval(v)
                }
            }
        }
    }
}

/// Shared atom table for compiling several formulas together.
#[derive(Default)]
pub struct Atoms {
    atoms: Vec<Term>,
}

impl Atoms {
    fn index(&mut self, t: &Term) -> usize {
        if let Some(i) = self.atoms.iter().position(|a| a.aconv(t)) {
            return i;
        }
        self.atoms.push(t.clone());
        self.atoms.len() - 1
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

fn compile(t: &Term, atoms: &mut Atoms) -> Prop {
    let b = |x: &Term, atoms: &mut Atoms| Box::new(compile(x, atoms));
    if t.is_const(sig::TRUE) {
        return Prop::Const(true);
    }
    if t.is_const(sig::FALSE) {
        return Prop::Const(false);
    }
    if let Some(x) = t.dest_neg() {
        return Prop::Not(b(x, atoms));
    }
    if let Some((x, y)) = t.dest_conj() {
        return Prop::And(b(x, atoms), b(y, atoms));
    }
    if let Some((x, y)) = t.dest_disj() {
        return Prop::Or(b(x, atoms), b(y, atoms));
    }
    if let Some((x, y)) = t.dest_imp() {
        return Prop::Imp(b(x, atoms), b(y, atoms));
    }
    if let Some((x, y)) = t.dest_iff() {
        return Prop::Iff(b(x, atoms), b(y, atoms));
    }
    if let Some((x, y)) = t.dest_eq() {
        if x.ty().is_bool() {
            return Prop::Iff(b(x, atoms), b(y, atoms));
        }
    }
    if let Some((c, x, y)) = t.dest_ite() {
        if x.ty().is_bool() {
            return Prop::Ite(b(c, atoms), b(x, atoms), b(y, atoms));
        }
    }
    if let Some((v, body)) = t.dest_forall() {
        if v.ty == Ty::Bool {
            let p = compile(&body.subst(&[(v.clone(), Term::truth())]), atoms);
            let q = compile(&body.subst(&[(v.clone(), Term::falsity())]), atoms);
            return Prop::And(Box::new(p), Box::new(q));
        }
    }
    Prop::Atom(atoms.index(t))
}

/// True when `t` is built only from Bool variables, `T`, `F` and interpreted
/// connectives (no opaque compound atoms).
pub fn is_propositional(t: &Term) -> bool {
    if !t.ty().is_bool() {
        return false;
    }
    let mut atoms = Atoms::default();
    compile(t, &mut atoms);
    atoms.atoms.iter().all(|a| matches!(a.kind(), TermKind::Var(_)))
}

fn describe(atoms: &Atoms, v: u32) -> String {
    let parts: Vec<String> = atoms
        .atoms
        .iter()
        .enumerate()
        .map(|(i, a)| format!("{a}↦{}", if v & (1 << i) != 0 { "T" } else { "F" }))
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// A valuation satisfying every hypothesis and falsifying `concl`, if any.
pub fn counterexample(hyps: &[Term], concl: &Term) -> Result<Option<String>> {
    let mut atoms = Atoms::default();
    let hs: Vec<Prop> = hyps.iter().map(|h| compile(h, &mut atoms)).collect();
    let c = compile(concl, &mut atoms);
    let n = atoms.len();
    if n > MAX_VARS {
        return Err(KernelError::TooManyVars(n));
    }
    for v in 0..(1u32 << n) {
        if hs.iter().all(|h| h.eval(v)) && !c.eval(v) {
            return Ok(Some(describe(&atoms, v)));
        }
    }
    Ok(None)
}

pub fn is_tautology(t: &Term) -> Result<bool> {
    Ok(counterexample(&[], t)?.is_none())
}

/// Evaluate under an assignment to variables; `None` if some atom is unassigned.
pub fn eval_with(t: &Term, val: &[(Var, bool)]) -> Option<bool> {
    let mut atoms = Atoms::default();
    let p = compile(t, &mut atoms);
    let mut bits = 0u32;
    for (i, a) in atoms.atoms.iter().enumerate() {
        let v = a.as_var()?;
        let (_, b) = val.iter().find(|(w, _)| w == v)?;
        if *b {
            bits |= 1 << i;
        }
    }
    Some(p.eval(bits))
}
