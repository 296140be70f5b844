//! Name-addressed registries of tactics, environment tactics, conversions and
//! the atomic goal types that depend on them.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use psg_goaltype::{Atoms, Env, EnvVal, GtEnv, Resolved};
use psg_kernel::{Goal, Tactic};

use crate::args::{self, ArgData};
use crate::conv::{focus_list, lift_conv, Conv};
use crate::error::{Result, TacError};
use crate::morphism::{morphism_convs, MorphismSets};
use crate::plan::{apply_env_tactic, apply_tactic, AppF};
use crate::{env_tactics, patterns, taut, tacticals};

pub type TacFn = Arc<dyn Fn(&[ArgData]) -> Result<Tactic> + Send + Sync>;
pub type EnvFn = Arc<dyn Fn(&[ArgData], &Env, &Goal) -> Result<Vec<Env>> + Send + Sync>;

#[derive(Clone)]
pub enum Entry {
    Tactic(TacFn),
    Env(EnvFn),
}

#[derive(Clone)]
pub struct TacticInfo {
    pub name: String,
    pub params: &'static str,
    pub doc: &'static str,
    pub entry: Entry,
}

#[derive(Clone)]
pub struct Registry {
    tactics: BTreeMap<String, TacticInfo>,
    convs: BTreeMap<String, (&'static str, Conv)>,
    atoms: Atoms,
}

/// Names of placeholder tactics that patterns expect to be replaced.
pub const PLACEHOLDERS: [&str; 4] = ["config_tac", "config_tac1", "config_tac2", "config_thm_tac"];

fn no_args(name: &'static str, t: fn() -> Tactic) -> TacFn {
    Arc::new(move |a| {
        args::arity(name, a, 0)?;
        Ok(t())
    })
}

fn term_arg(name: &'static str, t: fn(psg_kernel::Term) -> Tactic) -> TacFn {
    Arc::new(move |a| {
        args::arity(name, a, 1)?;
        Ok(t(args::one_term(name, &a[0])?))
    })
}

impl Registry {
    pub fn empty() -> Registry {
        Registry { tactics: BTreeMap::new(), convs: BTreeMap::new(), atoms: psg_goaltype::builtins() }
    }

    /// Every tactic, conversion and goal type used by the shipped strategies.
    pub fn standard() -> Registry {
        let mut r = Registry::empty();
        let sets = MorphismSets::default();
        for (name, doc, c) in morphism_convs(&sets) {
            r.register_conv(name, doc, c);
        }

        let t = |r: &mut Registry, name: &'static str, params, doc, f: TacFn| r.register_tactic(name, params, doc, f);
        t(&mut r, "all_tac", "", "leave the goal unchanged", no_args("all_tac", tacticals::all_tac));
        t(&mut r, "fail_tac", "", "always fail", Arc::new(|_| Ok(tacticals::fail_tac("fail_tac"))));
        t(&mut r, "t_tac", "", "discharge |- T", no_args("t_tac", taut::t_tac));
        t(&mut r, "conj_tac", "", "split a conjunction", no_args("conj_tac", taut::conj_tac));
        t(&mut r, "forall_tac", "", "universal introduction", no_args("forall_tac", taut::forall_tac));
        t(&mut r, "strip_imp_concl_tac", "", "implication introduction", no_args("strip_imp_concl_tac", taut::strip_imp_concl_tac));
        t(&mut r, "imp_strip_tac", "", "implication introduction, new assumption stripped to literals", no_args("imp_strip_tac", taut::imp_strip_tac));
        t(&mut r, "concl_in_asms_tac", "", "discharge when the conclusion is an assumption", no_args("concl_in_asms_tac", taut::concl_in_asms_tac));
        t(&mut r, "strip_not_concl_tac", "", "rewrite a negated conclusion", no_args("strip_not_concl_tac", taut::strip_not_concl_tac));
        t(&mut r, "strip_iff_concl_tac", "", "rewrite a <=> conclusion", no_args("strip_iff_concl_tac", taut::strip_iff_concl_tac));
        t(&mut r, "strip_if_concl_tac", "", "rewrite an if-then-else conclusion", no_args("strip_if_concl_tac", taut::strip_if_concl_tac));
        t(&mut r, "strip_or_concl_tac", "", "rewrite a disjunctive conclusion to an implication", no_args("strip_or_concl_tac", taut::strip_or_concl_tac));
        t(&mut r, "taut_strip_tac", "", "one step of the monolithic tautology tactic", no_args("taut_strip_tac", taut::taut_strip_tac));
        t(&mut r, "check_asm_tac", "", "discharge a structural tautological form", no_args("check_asm_tac", taut::check_asm_tac));
        t(
            &mut r,
            "check_new_asms_tac",
            "terms",
            "discharge a structural form involving an assumption not in the argument",
            Arc::new(|a| {
                args::arity("check_new_asms_tac", a, 1)?;
                Ok(taut::check_new_asms_tac(args::terms("check_new_asms_tac", &a[0])?))
            }),
        );
        t(&mut r, "elim_conj_asm_tac", "term", "split a conjunctive assumption", term_arg("elim_conj_asm_tac", taut::elim_conj_asm_tac));
        t(&mut r, "elim_disj_asm_tac", "term", "case split on a disjunctive assumption", term_arg("elim_disj_asm_tac", taut::elim_disj_asm_tac));
        t(&mut r, "elim_not_asm_tac", "term", "push a negated assumption inwards", term_arg("elim_not_asm_tac", taut::elim_not_asm_tac));
        t(&mut r, "elim_iff_asm_tac", "term", "rewrite a <=> assumption", term_arg("elim_iff_asm_tac", taut::elim_iff_asm_tac));
        t(&mut r, "elim_if_asm_tac", "term", "rewrite an if-then-else assumption", term_arg("elim_if_asm_tac", taut::elim_if_asm_tac));
        t(&mut r, "elim_imp_asm_tac", "term", "rewrite an implication assumption to a disjunction", term_arg("elim_imp_asm_tac", taut::elim_imp_asm_tac));
        t(&mut r, "lemma_tac", "term", "cut: prove the term, then use it", term_arg("lemma_tac", patterns::lemma_tac));
        t(&mut r, "case_tac", "term", "case split on the term", term_arg("case_tac", patterns::case_tac));
        t(&mut r, "drop_asm_tac", "term", "remove an assumption", term_arg("drop_asm_tac", patterns::drop_asm_tac));
        t(&mut r, "refl_tac", "", "close an equation with α-equal sides", no_args("refl_tac", patterns::refl_tac));
        for p in PLACEHOLDERS {
            t(&mut r, p, "any", "pattern placeholder, replaced on instantiation", Arc::new(move |_| Ok(tacticals::fail_tac(&format!("placeholder `{p}` was not instantiated")))));
        }
        let convs = r.convs.clone();
        t(
            &mut r,
            "lift_conv",
            "focus list, conversion name",
            "apply a conversion at the focus given by the stack",
            Arc::new(move |a| {
                args::arity("lift_conv", a, 2)?;
                let fs = args::focus_list("lift_conv", &a[0])?;
                let name = args::text("lift_conv", &a[1])?;
                let (_, c) = convs.get(&name).ok_or_else(|| TacError::UnknownConv(name.clone()))?;
                Ok(lift_conv(&fs, c.clone()))
            }),
        );

        let e = |r: &mut Registry, name: &'static str, params, doc, f: fn(&[ArgData], &Env, &Goal) -> Result<Vec<Env>>| {
            r.register_env(name, params, doc, Arc::new(f))
        };
        e(&mut r, "ENV_top_symb_asm", "terms, symbol, ?var", "bind the first assumption with the given top symbol", env_tactics::top_symb_asm);
        e(&mut r, "ENV_all_asms", "[terms,] ?var", "bind the list of assumptions", env_tactics::all_asms);
        e(&mut r, "ENV_bind", "?var, value", "bind a value (a variable is copied)", env_tactics::bind);
        e(&mut r, "ENV_push", "focus, ?var", "push onto a focus stack", env_tactics::push);
        e(&mut r, "ENV_pop", "?var", "pop a focus stack; fails when empty", env_tactics::pop);

        r.atoms.register_atomic("is_term", Some(1), |g, a, _| match &a[0] {
            Resolved::Val(EnvVal::T(_)) => vec![g.clone()],
            _ => vec![],
        });
        for (name, (_, c)) in r.convs.clone() {
            let gt = format!("is_{name}");
            r.atoms.register_atomic(&gt, Some(1), move |g: &GtEnv, a: &[Resolved], cx| match &a[0] {
                Resolved::Val(EnvVal::FocusList(fs)) if focus_list(fs, c.clone())(&cx.goal.concl).is_ok() => vec![g.clone()],
                _ => vec![],
            });
        }
        r
    }

    pub fn register_tactic(&mut self, name: &str, params: &'static str, doc: &'static str, f: TacFn) {
        self.tactics.insert(name.to_string(), TacticInfo { name: name.to_string(), params, doc, entry: Entry::Tactic(f) });
    }

    /// Environment tactic names must start with `ENV_`.
    pub fn register_env(&mut self, name: &str, params: &'static str, doc: &'static str, f: EnvFn) {
        assert!(name.starts_with("ENV_"), "environment tactic `{name}` must be prefixed ENV_");
        self.tactics.insert(name.to_string(), TacticInfo { name: name.to_string(), params, doc, entry: Entry::Env(f) });
    }

    pub fn register_conv(&mut self, name: &str, doc: &'static str, c: Conv) {
        self.convs.insert(name.to_string(), (doc, c));
    }

    pub fn contains(&self, name: &str) -> bool {
        self.tactics.contains_key(name)
    }

    pub fn is_env(&self, name: &str) -> bool {
        matches!(self.tactics.get(name), Some(TacticInfo { entry: Entry::Env(_), .. }))
    }

    pub fn get(&self, name: &str) -> Option<&TacticInfo> {
        self.tactics.get(name)
    }

    pub fn conv(&self, name: &str) -> Result<Conv> {
        self.convs.get(name).map(|(_, c)| c.clone()).ok_or_else(|| TacError::UnknownConv(name.to_string()))
    }

    pub fn atoms(&self) -> &Atoms {
        &self.atoms
    }

    /// The application function for a node `name(args)`.
    pub fn appf(&self, name: &str, args: Vec<ArgData>) -> Result<AppF> {
        match self.tactics.get(name) {
            Some(TacticInfo { entry: Entry::Tactic(f), .. }) => Ok(apply_tactic(args, f.clone())),
            Some(TacticInfo { entry: Entry::Env(f), .. }) => Ok(apply_env_tactic(args, f.clone())),
            None => Err(TacError::UnknownTactic(name.to_string())),
        }
    }

    pub fn tactics(&self) -> impl Iterator<Item = &TacticInfo> {
        self.tactics.values()
    }

    pub fn listing(&self) -> String {
        let mut s = String::from("tactics:\n");
        for t in self.tactics.values().filter(|t| matches!(t.entry, Entry::Tactic(_))) {
            let _ = writeln!(s, "  {}({})  {}", t.name, t.params, t.doc);
        }
        s.push_str("environment tactics:\n");
        for t in self.tactics.values().filter(|t| matches!(t.entry, Entry::Env(_))) {
            let _ = writeln!(s, "  {}({})  {}", t.name, t.params, t.doc);
        }
        s.push_str("conversions:\n");
        for (n, (doc, _)) in &self.convs {
            let _ = writeln!(s, "  {n}  {doc}");
        }
        s
    }
}
