//! Goal-node environments and the values they hold.

use std::collections::BTreeMap;
use std::fmt;

use psg_kernel::Term;

/// One step of a term-focus combinator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FocusAtom {
    /// operand of an application
    RandC,
    /// every operand along the application spine
    RandsC,
    /// right operand of a binary operator
    RightC,
    /// operator part of an application
    RatorC,
}

impl FocusAtom {
    pub fn name(self) -> &'static str {
        match self {
            FocusAtom::RandC => "RAND_C",
            FocusAtom::RandsC => "RANDS_C",
            FocusAtom::RightC => "RIGHT_C",
            FocusAtom::RatorC => "RATOR_C",
        }
    }

    pub fn from_name(s: &str) -> Option<FocusAtom> {
        Some(match s.trim() {
            "RAND_C" | "RandC" => FocusAtom::RandC,
            "RANDS_C" | "RandsC" => FocusAtom::RandsC,
            "RIGHT_C" | "RightC" => FocusAtom::RightC,
            "RATOR_C" | "RatorC" => FocusAtom::RatorC,
            _ => return None,
        })
    }
}

/// A composition `f1 o f2 o ... o fn` of focus steps; `f1` is outermost.
/// The empty composition is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Focus(pub Vec<FocusAtom>);

impl Focus {
    pub fn parse(s: &str) -> Option<Focus> {
        let s = s.trim();
        if s.is_empty() || s == "I" || s == "ID_C" {
            return Some(Focus(vec![]));
        }
        s.split(['o', '∘'])
            .filter(|p| !p.trim().is_empty())
            .map(FocusAtom::from_name)
            .collect::<Option<Vec<_>>>()
            .map(Focus)
    }
}

impl fmt::Display for Focus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ID_C");
        }
        let parts: Vec<&str> = self.0.iter().map(|a| a.name()).collect();
        f.write_str(&parts.join(" o "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EnvVal {
    T(Term),
    N(String),
    TList(Vec<Term>),
    NList(Vec<String>),
    FocusList(Vec<Focus>),
}

impl EnvVal {
    /// Equality with terms compared up to α.
    pub fn same(&self, other: &EnvVal) -> bool {
        match (self, other) {
            (EnvVal::T(a), EnvVal::T(b)) => a.aconv(b),
            (EnvVal::TList(a), EnvVal::TList(b)) => a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.aconv(y)),
            _ => self == other,
        }
    }

    pub fn as_term(&self) -> Option<&Term> {
        match self {
            EnvVal::T(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_name(&self) -> Option<&str> {
        match self {
            EnvVal::N(n) => Some(n),
            _ => None,
        }
    }

    /// Elements of a list value.
    pub fn items(&self) -> Option<Vec<EnvVal>> {
        match self {
            EnvVal::TList(ts) => Some(ts.iter().cloned().map(EnvVal::T).collect()),
            EnvVal::NList(ns) => Some(ns.iter().cloned().map(EnvVal::N).collect()),
            EnvVal::FocusList(fs) => Some(fs.iter().cloned().map(|f| EnvVal::FocusList(vec![f])).collect()),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            EnvVal::T(_) => "term",
            EnvVal::N(_) => "name",
            EnvVal::TList(_) => "term list",
            EnvVal::NList(_) => "name list",
            EnvVal::FocusList(_) => "focus list",
        }
    }
}

impl fmt::Display for EnvVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
            let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", parts.join(", "))
        }
        match self {
            EnvVal::T(t) => write!(f, "{t}"),
            EnvVal::N(n) => f.write_str(n),
            EnvVal::TList(ts) => list(f, ts),
            EnvVal::NList(ns) => list(f, ns),
            EnvVal::FocusList(fs) => list(f, fs),
        }
    }
}

/// Goal-node environment. Keys keep their `?` prefix.
pub type Env = BTreeMap<String, EnvVal>;

/// Goal-type environment, keyed by capitalised variable names.
pub type GtEnv = BTreeMap<String, EnvVal>;

/// `a` overridden by `b`.
pub fn override_env(a: &GtEnv, b: &GtEnv) -> GtEnv {
    let mut out = a.clone();
    for (k, v) in b {
        out.insert(k.clone(), v.clone());
    }
    out
}

/// Render bindings as `{?a ↦ v, ...}`.
pub fn show_env(env: &BTreeMap<String, EnvVal>) -> String {
    let parts: Vec<String> = env.iter().map(|(k, v)| format!("{k}↦{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}
