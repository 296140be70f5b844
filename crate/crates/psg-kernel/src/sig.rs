//! The fixed constant signature. Every constant is a monomorphic instance
//! of one of these schemes.

use crate::ty::Ty;

pub const TRUE: &str = "T";
pub const FALSE: &str = "F";
pub const NEG: &str = "¬";
pub const CONJ: &str = "∧";
pub const DISJ: &str = "∨";
pub const IMP: &str = "⇒";
pub const IFF: &str = "⇔";
pub const ITE: &str = "ite";
pub const EQ: &str = "=";
pub const FORALL: &str = "∀";
pub const I: &str = "I";
pub const K: &str = "K";
pub const COMP: &str = "∘";
pub const FORK: &str = "Fork";
pub const UNCURRY: &str = "Uncurry";
pub const FST: &str = "π1";
pub const SND: &str = "π2";
pub const PAIR: &str = "Pair";
pub const SIN: &str = "sin";
pub const COS: &str = "cos";
pub const PLUS: &str = "+";
pub const POW: &str = "^";
pub const LT: &str = "<";
pub const LE: &str = "≤";

/// Type scheme with numbered variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scheme {
    V(u8),
    Bool,
    Real,
    Num,
    Fun(Box<Scheme>, Box<Scheme>),
    Prod(Box<Scheme>, Box<Scheme>),
    /// Real or Num; used for numerals.
    Numeric,
}

fn f(a: Scheme, b: Scheme) -> Scheme {
    Scheme::Fun(Box::new(a), Box::new(b))
}

fn p(a: Scheme, b: Scheme) -> Scheme {
    Scheme::Prod(Box::new(a), Box::new(b))
}

pub fn is_numeral(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_digit())
}

/// Scheme of a constant name, if it belongs to the signature.
pub fn scheme(name: &str) -> Option<Scheme> {
    use Scheme::*;
    let a = || V(0);
    let b = || V(1);
    let c = || V(2);
    let bb = || f(Bool, Bool);
    let bbb = || f(Bool, f(Bool, Bool));
    if is_numeral(name) {
        return Some(Numeric);
    }
    Some(match name {
        TRUE | FALSE => Bool,
        NEG => bb(),
        CONJ | DISJ | IMP | IFF => bbb(),
        ITE => f(Bool, f(a(), f(a(), a()))),
        EQ => f(a(), f(a(), Bool)),
        FORALL => f(f(a(), Bool), Bool),
        I => f(a(), a()),
        K => f(a(), f(b(), a())),
        COMP => f(f(b(), c()), f(f(a(), b()), f(a(), c()))),
        FORK => f(p(f(a(), b()), f(a(), c())), f(a(), p(b(), c()))),
        UNCURRY => f(f(a(), f(b(), c())), f(p(a(), b()), c())),
        FST => f(p(a(), b()), a()),
        SND => f(p(a(), b()), b()),
        PAIR => f(a(), f(b(), p(a(), b()))),
        SIN | COS => f(Real, Real),
        PLUS => f(Real, f(Real, Real)),
        POW => f(Real, f(Num, Real)),
        LT | LE => f(Num, f(Num, Bool)),
        _ => return None,
    })
}

pub fn is_constant_name(name: &str) -> bool {
    scheme(name).is_some()
}

/// Does `ty` instantiate `sch`?
pub fn instance_of(ty: &Ty, sch: &Scheme) -> bool {
    let mut sub: [Option<Ty>; 3] = [None, None, None];
    matches(ty, sch, &mut sub)
}

fn matches(ty: &Ty, sch: &Scheme, sub: &mut [Option<Ty>; 3]) -> bool {
    match (sch, ty) {
        (Scheme::V(i), _) => match &sub[*i as usize] {
            Some(t) => t == ty,
            None => {
                sub[*i as usize] = Some(ty.clone());
                true
            }
        },
        (Scheme::Bool, Ty::Bool) | (Scheme::Real, Ty::Real) | (Scheme::Num, Ty::Num) => true,
        (Scheme::Numeric, Ty::Real | Ty::Num) => true,
        (Scheme::Fun(a, b), Ty::Fun(x, y)) | (Scheme::Prod(a, b), Ty::Prod(x, y)) => {
            matches(x, a, sub) && matches(y, b, sub)
        }
        _ => false,
    }
}
