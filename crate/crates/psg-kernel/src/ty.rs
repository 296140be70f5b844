//! Simple types.

use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Ty {
    Bool,
    Real,
    Num,
    Fun(Arc<Ty>, Arc<Ty>),
    Prod(Arc<Ty>, Arc<Ty>),
}

impl Ty {
    pub fn fun(dom: Ty, cod: Ty) -> Ty {
        Ty::Fun(Arc::new(dom), Arc::new(cod))
    }

    pub fn prod(l: Ty, r: Ty) -> Ty {
        Ty::Prod(Arc::new(l), Arc::new(r))
    }

    /// `a -> b -> ... -> r` from a list of argument types.
    pub fn curried(args: &[Ty], res: Ty) -> Ty {
        args.iter().rev().fold(res, |acc, a| Ty::fun(a.clone(), acc))
    }

    pub fn is_bool(&self) -> bool {
        matches!(self, Ty::Bool)
    }

    pub fn dest_fun(&self) -> Option<(&Ty, &Ty)> {
        match self {
            Ty::Fun(d, c) => Some((d, c)),
            _ => None,
        }
    }

    pub fn dest_prod(&self) -> Option<(&Ty, &Ty)> {
        match self {
            Ty::Prod(l, r) => Some((l, r)),
            _ => None,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        match self {
            Ty::Bool => write!(f, "Bool"),
            Ty::Real => write!(f, "Real"),
            Ty::Num => write!(f, "Num"),
            Ty::Fun(d, c) => {
                if prec > 0 {
                    write!(f, "(")?;
                }
                d.fmt_prec(f, 1)?;
                write!(f, " -> ")?;
                c.fmt_prec(f, 0)?;
                if prec > 0 {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Ty::Prod(l, r) => {
                if prec > 1 {
                    write!(f, "(")?;
                }
                l.fmt_prec(f, 2)?;
                write!(f, " # ")?;
                r.fmt_prec(f, 1)?;
                if prec > 1 {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
