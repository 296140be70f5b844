//! Brute-force reference interpreter for goal types and a random instance generator.
//! Everything is evaluated eagerly, with its own copy of the builtin predicates.

#![allow(dead_code)]

use std::collections::BTreeMap;

use psg_goaltype::{GoalType, GtArg, GtDefs, Literal, Rule};
use psg_kernel::{Goal, Term, Ty};
use rand::Rng;

pub type Bindings = BTreeMap<String, Val>;

#[derive(Clone, Debug)]
pub enum Val {
    T(Term),
    N(String),
    L(Vec<Term>),
}

fn same(a: &Val, b: &Val) -> bool {
    match (a, b) {
        (Val::T(x), Val::T(y)) => x.aconv(y),
        (Val::N(x), Val::N(y)) => x == y,
        (Val::L(x), Val::L(y)) => x.len() == y.len() && x.iter().zip(y).all(|(p, q)| p.aconv(q)),
        _ => false,
    }
}

pub const DEPTH: usize = 8;

pub struct Reference<'a> {
    pub defs: &'a GtDefs,
    pub goal: &'a Goal,
}

fn connective_name(c: &str) -> String {
    match c {
        "∧" => "conj",
        "∨" => "disj",
        "⇒" => "implies",
        "⇔" => "equiv",
        "¬" => "not",
        "ite" => "if_then_else",
        "∀" => "forall",
        "T" => "true",
        "F" => "false",
        "=" => "eq",
        other => other,
    }
    .to_string()
}

fn head_name(t: &Term) -> Option<String> {
    let mut h = t;
    while let Some((f, _)) = h.dest_app() {
        h = f;
    }
    h.const_name().map(connective_name)
}

impl Reference<'_> {
    fn value(&self, b: &Bindings, a: &GtArg) -> Option<Val> {
        match a {
            GtArg::Name(n) if n == "concl" => Some(Val::T(self.goal.concl.clone())),
            GtArg::Name(n) if n == "hyps" => Some(Val::L(self.goal.hyps.clone())),
            GtArg::Name(n) => Some(Val::N(n.clone())),
            GtArg::TermLit(t) => Some(Val::T(t.clone())),
            GtArg::GVar(v) => b.get(v).cloned(),
            GtArg::EnvRef(_) => None,
        }
    }

    fn unify(&self, b: &Bindings, a: &GtArg, v: Val) -> Option<Bindings> {
        match self.value(b, a) {
            Some(w) => same(&w, &v).then(|| b.clone()),
            None => match a {
                GtArg::GVar(x) => {
                    let mut out = b.clone();
                    out.insert(x.clone(), v);
                    Some(out)
                }
                _ => None,
            },
        }
    }

    fn atom(&self, b: &Bindings, l: &Literal) -> Vec<Bindings> {
        let a = &l.args;
        let term = |i: usize| match self.value(b, &a[i]) {
            Some(Val::T(t)) => Some(t),
            _ => None,
        };
        let name_is = |i: usize, n: String| -> Option<Bindings> {
            match self.value(b, &a[i]) {
                Some(Val::T(c)) => (c.const_name().map(connective_name) == Some(n)).then(|| b.clone()),
                _ => self.unify(b, &a[i], Val::N(n)),
            }
        };
        match l.pred.as_str() {
            "any" => vec![b.clone()],
            "top_symbol" => term(0).and_then(|t| head_name(&t)).and_then(|n| name_is(1, n)).into_iter().collect(),
            "const" => term(0).and_then(|t| t.const_name().map(connective_name)).and_then(|n| name_is(1, n)).into_iter().collect(),
            "trm_var" => term(0).filter(|t| t.is_var()).map(|_| b.clone()).into_iter().collect(),
            "member" => match self.value(b, &a[0]) {
                Some(Val::L(ts)) => ts.into_iter().filter_map(|t| self.unify(b, &a[1], Val::T(t))).collect(),
                _ => vec![],
            },
            "eq_trm" => match (self.value(b, &a[0]), self.value(b, &a[1])) {
                (Some(Val::T(x)), Some(Val::T(y))) => if x.aconv(&y) { vec![b.clone()] } else { vec![] },
                (None, Some(v @ Val::T(_))) => self.unify(b, &a[0], v).into_iter().collect(),
                (Some(v @ Val::T(_)), None) => self.unify(b, &a[1], v).into_iter().collect(),
                _ => vec![],
            },
            "dest_trm" => match term(0) {
                Some(t) => match t.dest_app() {
                    Some((f, x)) => self
                        .unify(b, &a[1], Val::T(f.clone()))
                        .and_then(|b1| self.unify(&b1, &a[2], Val::T(x.clone())))
                        .into_iter()
                        .collect(),
                    None => vec![],
                },
                None => vec![],
            },
            other => panic!("reference: unknown predicate {other}"),
        }
    }

    fn call(&self, b: &Bindings, l: &Literal, depth: usize) -> Vec<Bindings> {
        if depth > DEPTH {
            return vec![];
        }
        let rules: Vec<&Rule> = self.defs.rules.iter().filter(|r| r.name == l.pred && r.formals.len() == l.args.len()).collect();
        if rules.is_empty() {
            return self.atom(b, l);
        }
        let mut out = Vec::new();
        for r in rules {
            let mut start = Bindings::new();
            for (f, a) in r.formals.iter().zip(&l.args) {
                if let Some(v) = self.value(b, a) {
                    start.insert(f.clone(), v);
                }
            }
            for end in self.body(&start, &r.body.clauses, depth + 1) {
                let mut back = Bindings::new();
                for (f, a) in r.formals.iter().zip(&l.args) {
                    if let (GtArg::GVar(x), Some(v)) = (a, end.get(f)) {
                        back.insert(x.clone(), v.clone());
                    }
                }
                out.push(back);
            }
        }
        out
    }

    fn lit(&self, b: &Bindings, l: &Literal, depth: usize) -> Vec<Bindings> {
        let pos = self.call(b, l, depth);
        if l.negated {
            if pos.is_empty() { vec![b.clone()] } else { vec![] }
        } else {
            pos
        }
    }

    pub fn body(&self, b: &Bindings, lits: &[Literal], depth: usize) -> Vec<Bindings> {
        let Some((first, rest)) = lits.split_first() else { return vec![b.clone()] };
        let sols = self.lit(b, first, depth);
        if rest.is_empty() {
            return sols;
        }
        let mut out = Vec::new();
        for s in sols {
            let mut merged = b.clone();
            merged.extend(s);
            for s3 in self.body(&merged, rest, depth) {
                let mut m = merged.clone();
                m.extend(s3);
                out.push(m);
            }
        }
        out
    }

    pub fn satisfies(&self, gt: &GoalType) -> bool {
        !self.body(&Bindings::new(), &gt.clauses, 0).is_empty()
    }
}

// ---- random instances

fn atom_term(rng: &mut impl Rng) -> Term {
    Term::var(["A", "B", "C"][rng.gen_range(0..3)], Ty::Bool)
}

pub fn rand_prop(rng: &mut impl Rng, depth: u32) -> Term {
    if depth == 0 || rng.gen_ratio(1, 3) {
        return if rng.gen_ratio(1, 8) { Term::truth() } else { atom_term(rng) };
    }
    let a = rand_prop(rng, depth - 1);
    let b = rand_prop(rng, depth - 1);
    match rng.gen_range(0..5) {
        0 => Term::mk_neg(&a).unwrap(),
        1 => Term::mk_conj(&a, &b).unwrap(),
        2 => Term::mk_disj(&a, &b).unwrap(),
        3 => Term::mk_imp(&a, &b).unwrap(),
        _ => Term::mk_ite(&a, &b, &rand_prop(rng, depth - 1)).unwrap(),
    }
}

pub fn rand_goal(rng: &mut impl Rng) -> Goal {
    let n = rng.gen_range(0..=6);
    let hyps = (0..n).map(|_| rand_prop(rng, 3)).collect();
    Goal::new(hyps, rand_prop(rng, 3)).unwrap()
}

const NAMES: [&str; 6] = ["conj", "disj", "implies", "not", "if_then_else", "true"];
const ATOMS: [(&str, usize); 6] = [("top_symbol", 2), ("member", 2), ("eq_trm", 2), ("trm_var", 1), ("dest_trm", 3), ("const", 2)];

fn rand_arg(rng: &mut impl Rng, vars: &[String], allow_vars: bool) -> GtArg {
    match rng.gen_range(0..10) {
        0..=4 if allow_vars && !vars.is_empty() => GtArg::GVar(vars[rng.gen_range(0..vars.len())].clone()),
        0..=1 => GtArg::Name("concl".into()),
        2 => GtArg::Name("hyps".into()),
        3..=5 => GtArg::Name(NAMES[rng.gen_range(0..NAMES.len())].into()),
        _ => GtArg::TermLit(rand_prop(rng, 1)),
    }
}

/// Acyclic random program: rule `pI` only calls `pJ` with `J > I` or builtins.
pub fn rand_defs(rng: &mut impl Rng) -> (GtDefs, Vec<usize>) {
    let nnames = rng.gen_range(1..=3);
    let arities: Vec<usize> = (0..nnames).map(|_| rng.gen_range(0..=2)).collect();
    let nrules = rng.gen_range(nnames..=5);
    let mut rules = Vec::new();
    for i in 0..nrules {
        let p = if i < nnames { i } else { rng.gen_range(0..nnames) };
        let formals: Vec<String> = (0..arities[p]).map(|k| ["X", "Y"][k].to_string()).collect();
        let mut vars = formals.clone();
        vars.extend(["Z".to_string(), "W".to_string()]);
        let nclauses = rng.gen_range(1..=3);
        let mut clauses = Vec::new();
        for _ in 0..nclauses {
            let negated = rng.gen_ratio(1, 5);
            let mut callees: Vec<(String, usize)> = ATOMS.iter().map(|(n, a)| (n.to_string(), *a)).collect();
            callees.extend((p + 1..nnames).map(|q| (format!("p{q}"), arities[q])));
            // favour calls into the program
            let (pred, arity) = if p + 1 < nnames && rng.gen_bool(0.4) {
                callees[ATOMS.len() + rng.gen_range(0..nnames - p - 1)].clone()
            } else {
                callees[rng.gen_range(0..callees.len())].clone()
            };
            let args = (0..arity).map(|_| rand_arg(rng, &vars, true)).collect();
            clauses.push(Literal { negated, pred, args });
        }
        rules.push(Rule { name: format!("p{p}"), formals, body: GoalType { clauses } });
    }
    (GtDefs { rules, atomics: vec![] }, arities)
}

/// A wire goal type calling the program's entry point.
pub fn rand_wire(rng: &mut impl Rng, arities: &[usize]) -> GoalType {
    let mut clauses = vec![Literal {
        negated: rng.gen_ratio(1, 6),
        pred: "p0".into(),
        args: (0..arities[0]).map(|_| rand_arg(rng, &[], false)).collect(),
    }];
    if rng.gen_ratio(1, 3) {
        let (n, a) = ATOMS[rng.gen_range(0..ATOMS.len())];
        clauses.push(Literal { negated: rng.gen_bool(0.5), pred: n.into(), args: (0..a).map(|_| rand_arg(rng, &[], false)).collect() });
    }
    GoalType { clauses }
}
