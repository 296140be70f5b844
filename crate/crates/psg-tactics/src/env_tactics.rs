//! Environment tactics: they change a goal node's environment and nothing else.

use psg_goaltype::builtins::top_symbol;
use psg_goaltype::{Env, EnvVal};
use psg_kernel::Goal;

use crate::args::{self, ArgData};
use crate::error::{Result, TacError};

fn bound(mut env: Env, v: String, val: EnvVal) -> Vec<Env> {
    env.insert(v, val);
    vec![env]
}

/// `ENV_top_symb_asm(hyps, sym, ?v)`: bind the first hypothesis whose top symbol is `sym`.
/// Negated variables are literals and are skipped.
pub fn top_symb_asm(a: &[ArgData], env: &Env, _: &Goal) -> Result<Vec<Env>> {
    let n = "ENV_top_symb_asm";
    args::arity(n, a, 3)?;
    let hyps = args::terms(n, &a[0])?;
    let sym = args::text(n, &a[1])?;
    let v = args::var(n, &a[2])?;
    let literal = |h: &psg_kernel::Term| h.dest_neg().is_some_and(|b| b.as_var().is_some());
    Ok(match hyps.iter().find(|h| !literal(h) && top_symbol(h).as_deref() == Some(sym.as_str())) {
        Some(h) => bound(env.clone(), v, EnvVal::T(h.clone())),
        None => vec![],
    })
}

/// `ENV_all_asms(?v)` or `ENV_all_asms(hyps, ?v)`: bind the hypothesis list.
pub fn all_asms(a: &[ArgData], env: &Env, g: &Goal) -> Result<Vec<Env>> {
    let n = "ENV_all_asms";
    let (hyps, v) = match a {
        [v] => (g.hyps.clone(), args::var(n, v)?),
        [h, v] => (args::terms(n, h)?, args::var(n, v)?),
        _ => return args::arity(n, a, 1).map(|_| vec![]),
    };
    Ok(bound(env.clone(), v, EnvVal::TList(hyps)))
}

/// `ENV_bind(?v, value)`; a variable value is copied.
pub fn bind(a: &[ArgData], env: &Env, _: &Goal) -> Result<Vec<Env>> {
    let n = "ENV_bind";
    args::arity(n, a, 2)?;
    let v = args::var(n, &a[0])?;
    let val = match &a[1] {
        ArgData::Trms(ts) if ts.len() == 1 => EnvVal::T(ts[0].clone()),
        ArgData::Trms(ts) => EnvVal::TList(ts.clone()),
        ArgData::Var(w) => env.get(w).cloned().ok_or_else(|| TacError::Unbound(w.clone()))?,
        ArgData::Str(s) | ArgData::Name(s) => EnvVal::N(s.clone()),
        ArgData::Names(ns) => EnvVal::NList(ns.clone()),
        ArgData::Focus(f) => EnvVal::FocusList(vec![f.clone()]),
        ArgData::FocusList(fs) => EnvVal::FocusList(fs.clone()),
    };
    Ok(bound(env.clone(), v, val))
}

/// `ENV_push(focus, ?v)`: append to the focus stack in `?v`.
pub fn push(a: &[ArgData], env: &Env, _: &Goal) -> Result<Vec<Env>> {
    let n = "ENV_push";
    args::arity(n, a, 2)?;
    let fs = args::focus_list(n, &a[0])?;
    let v = args::var(n, &a[1])?;
    match env.get(&v) {
        Some(EnvVal::FocusList(stack)) => {
            let mut stack = stack.clone();
            stack.extend(fs);
            Ok(bound(env.clone(), v, EnvVal::FocusList(stack)))
        }
        _ => Ok(vec![]),
    }
}

/// `ENV_pop(?v)`: drop the last element; an empty stack yields no environment.
pub fn pop(a: &[ArgData], env: &Env, _: &Goal) -> Result<Vec<Env>> {
    let n = "ENV_pop";
    args::arity(n, a, 1)?;
    let v = args::var(n, &a[0])?;
    match env.get(&v) {
        Some(EnvVal::FocusList(stack)) if !stack.is_empty() => {
            let mut stack = stack.clone();
            stack.pop();
            Ok(bound(env.clone(), v, EnvVal::FocusList(stack)))
        }
        _ => Ok(vec![]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use psg_goaltype::Focus;
    use psg_kernel::parse_goal;

    #[test]
    fn top_symb_binds_first_match() {
        let g = parse_goal("C, A => B, B => A |- B").unwrap();
        let envs = top_symb_asm(&[ArgData::Trms(g.hyps.clone()), ArgData::Str("implies".into()), ArgData::Var("?asm".into())], &Env::new(), &g).unwrap();
        assert_eq!(envs.len(), 1);
        assert_eq!(envs[0]["?asm"].to_string(), "A => B");
        let g = parse_goal("~A, ~(A /\\ B) |- B").unwrap();
        let envs = top_symb_asm(&[ArgData::Trms(g.hyps.clone()), ArgData::Str("not".into()), ArgData::Var("?asm".into())], &Env::new(), &g).unwrap();
        assert_eq!(envs[0]["?asm"].to_string(), "~(A /\\ B)");
    }

    #[test]
    fn push_and_pop() {
        let g = parse_goal("|- A").unwrap();
        let f = Focus::parse("RAND_C").unwrap();
        let ff = Focus::parse("RAND_C o RAND_C").unwrap();
        let mut env = Env::new();
        env.insert("?rec".into(), EnvVal::FocusList(vec![f.clone()]));
        let pushed = push(&[ArgData::Focus(ff.clone()), ArgData::Var("?rec".into())], &env, &g).unwrap();
        assert_eq!(pushed[0]["?rec"], EnvVal::FocusList(vec![f.clone(), ff]));
        let popped = pop(&[ArgData::Var("?rec".into())], &env, &g).unwrap();
        assert_eq!(popped[0]["?rec"], EnvVal::FocusList(vec![]));
        assert!(pop(&[ArgData::Var("?rec".into())], &popped[0], &g).unwrap().is_empty());
    }
}
