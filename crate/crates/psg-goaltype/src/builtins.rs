//! Builtin atomic goal types and the constant-name mapping they use.

use psg_kernel::sig;
use psg_kernel::Term;

use crate::env::{EnvVal, GtEnv};
use crate::eval::{Atoms, Resolved};

/// Goal-type name of a constant (`∧` is `conj`, ...). Other constants keep their own name.
pub fn symbol_name(c: &str) -> String {
    match c {
        sig::CONJ => "conj",
        sig::DISJ => "disj",
        sig::IMP => "implies",
        sig::IFF => "equiv",
        sig::NEG => "not",
        sig::ITE => "if_then_else",
        sig::FORALL => "forall",
        sig::TRUE => "true",
        sig::FALSE => "false",
        sig::EQ => "eq",
        other => other,
    }
    .to_string()
}

/// Inverse of [`symbol_name`] on the renamed constants.
pub fn constant_of_name(n: &str) -> Option<&'static str> {
    Some(match n {
        "conj" => sig::CONJ,
        "disj" => sig::DISJ,
        "implies" => sig::IMP,
        "equiv" => sig::IFF,
        "not" => sig::NEG,
        "if_then_else" => sig::ITE,
        "forall" => sig::FORALL,
        "true" => sig::TRUE,
        "false" => sig::FALSE,
        "eq" => sig::EQ,
        _ => return None,
    })
}

/// Head constant of the application spine, by goal-type name.
pub fn top_symbol(t: &Term) -> Option<String> {
    t.strip_comb().0.const_name().map(symbol_name)
}

fn bind_or_check(gtenv: &GtEnv, r: &Resolved, v: EnvVal) -> Option<GtEnv> {
    match r {
        // a variable repeated in one call is bound by its first occurrence
        Resolved::Unbound(x) if gtenv.contains_key(x) => gtenv[x].same(&v).then(|| gtenv.clone()),
        Resolved::Unbound(x) => {
            let mut g = gtenv.clone();
            g.insert(x.clone(), v);
            Some(g)
        }
        Resolved::Val(w) => w.same(&v).then(|| gtenv.clone()),
    }
}

/// Compare a symbol name against a bound name (or a bound constant term).
fn name_matches(gtenv: &GtEnv, r: &Resolved, name: String) -> Option<GtEnv> {
    match r {
        Resolved::Val(EnvVal::T(t)) => match t.const_name() {
            Some(c) if symbol_name(c) == name => Some(gtenv.clone()),
            _ => None,
        },
        _ => bind_or_check(gtenv, r, EnvVal::N(name)),
    }
}

fn term_arg(r: &Resolved) -> Option<&Term> {
    match r {
        Resolved::Val(EnvVal::T(t)) => Some(t),
        _ => None,
    }
}

pub fn builtins() -> Atoms {
    let mut a = Atoms::default();
    a.register_atomic("any", Some(0), |g, _, _| vec![g.clone()]);
    a.register_atomic("top_symbol", Some(2), |g, args, _| {
        let Some(t) = term_arg(&args[0]) else { return vec![] };
        let Some(name) = top_symbol(t) else { return vec![] };
        name_matches(g, &args[1], name).into_iter().collect()
    });
    a.register_atomic("member", Some(2), |g, args, _| {
        let Resolved::Val(xs) = &args[0] else { return vec![] };
        let Some(items) = xs.items() else { return vec![] };
        items.into_iter().filter_map(|x| bind_or_check(g, &args[1], x)).collect()
    });
    a.register_atomic("eq_trm", Some(2), |g, args, _| match (&args[0], &args[1]) {
        (Resolved::Val(EnvVal::T(x)), Resolved::Val(EnvVal::T(y))) => {
            if x.aconv(y) {
                vec![g.clone()]
            } else {
                vec![]
            }
        }
        (Resolved::Unbound(_), Resolved::Val(v @ EnvVal::T(_))) => bind_or_check(g, &args[0], v.clone()).into_iter().collect(),
        (Resolved::Val(v @ EnvVal::T(_)), Resolved::Unbound(_)) => bind_or_check(g, &args[1], v.clone()).into_iter().collect(),
        _ => vec![],
    });
    a.register_atomic("trm_var", Some(1), |g, args, _| match term_arg(&args[0]) {
        Some(t) if t.is_var() => vec![g.clone()],
        _ => vec![],
    });
    a.register_atomic("dest_trm", Some(3), |g, args, _| {
        let Some(t) = term_arg(&args[0]) else { return vec![] };
        let Some((f, x)) = t.dest_app() else { return vec![] };
        bind_or_check(g, &args[1], EnvVal::T(f.clone()))
            .and_then(|g1| bind_or_check(&g1, &args[2], EnvVal::T(x.clone())))
            .into_iter()
            .collect()
    });
    a.register_atomic("const", Some(2), |g, args, _| {
        let Some(t) = term_arg(&args[0]) else { return vec![] };
        let Some(c) = t.const_name() else { return vec![] };
        name_matches(g, &args[1], symbol_name(c)).into_iter().collect()
    });
    a
}
