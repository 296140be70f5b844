//! Conversions from λ-terms to point-free combinator form.

use psg_kernel::thm::{comb_rule, Comb};
use psg_kernel::{sig, KernelError, Term};

use crate::conv::{conv, Conv};

/// Function symbols treated as unary, binary and parametrised by the conversions.
#[derive(Clone, Debug)]
pub struct MorphismSets {
    pub unary: Vec<String>,
    pub binary: Vec<String>,
    pub param: Vec<String>,
}

impl Default for MorphismSets {
    fn default() -> Self {
        let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect();
        MorphismSets { unary: s(&[sig::SIN, sig::COS, sig::FST, sig::SND]), binary: s(&[sig::PLUS]), param: s(&[sig::POW]) }
    }
}

fn head_in(t: &Term, set: &[String], nargs: usize) -> Result<(), KernelError> {
    let Some((_, body)) = t.dest_abs() else {
        return Err(KernelError::Tactic(format!("`{t}` is not an abstraction")));
    };
    let (h, args) = body.strip_comb();
    match h.const_name() {
        Some(c) if args.len() == nargs && set.iter().any(|s| s == c) => Ok(()),
        _ => Err(KernelError::Tactic(format!("`{body}` has no head in {{{}}}", set.join(", ")))),
    }
}

pub fn i_conv() -> Conv {
    conv(|t| comb_rule(Comb::I, t))
}

pub fn k_conv() -> Conv {
    conv(|t| comb_rule(Comb::K, t))
}

pub fn pair_conv() -> Conv {
    conv(|t| comb_rule(Comb::Pair, t))
}

pub fn unary_conv(sets: &MorphismSets) -> Conv {
    let set = sets.unary.clone();
    conv(move |t| {
        head_in(t, &set, 1)?;
        comb_rule(Comb::Unary, t)
    })
}

pub fn binary_conv(sets: &MorphismSets) -> Conv {
    let set = sets.binary.clone();
    conv(move |t| {
        head_in(t, &set, 2)?;
        comb_rule(Comb::Binary, t)
    })
}

pub fn param_conv(sets: &MorphismSets) -> Conv {
    let set = sets.param.clone();
    conv(move |t| {
        head_in(t, &set, 2)?;
        comb_rule(Comb::Param, t)
    })
}

pub fn simp_conv() -> Conv {
    conv(|t| comb_rule(Comb::Simp, t))
}

pub fn unpair_conv() -> Conv {
    conv(|t| comb_rule(Comb::Unpair, t))
}

/// Named conversions available to `lift_conv` and the `is_*_conv` goal types.
pub fn morphism_convs(sets: &MorphismSets) -> Vec<(&'static str, &'static str, Conv)> {
    vec![
        ("i_conv", "(\\x. x) ~> I", i_conv()),
        ("k_conv", "(\\x. t) ~> K t, x not free in t", k_conv()),
        ("pair_conv", "(\\x. (t1, t2)) ~> <|\\x. t1, \\x. t2|>", pair_conv()),
        ("unary_conv", "(\\x. f t) ~> f o (\\x. t), f unary", unary_conv(sets)),
        ("binary_conv", "(\\x. g t1 t2) ~> Uncurry g o <|\\x. t1, \\x. t2|>, g binary", binary_conv(sets)),
        ("param_conv", "(\\x. h t c) ~> (\\x. h x c) o (\\x. t), h parametrised, c constant", param_conv(sets)),
        ("simp_conv", "f o I ~> f", simp_conv()),
        ("unpair_conv", "(\\(x, y). t) ~> \\p. t[pi1 p/x, pi2 p/y]", unpair_conv()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use psg_kernel::parse_term;

    fn rhs(c: Conv, s: &str) -> String {
        let th = c(&parse_term(s).unwrap()).unwrap();
        th.concl().dest_eq().unwrap().1.to_string()
    }

    #[test]
    fn single_rules() {
        let sets = MorphismSets::default();
        assert_eq!(rhs(k_conv(), "\\x. 1"), "K 1");
        assert!(k_conv()(&parse_term("\\x. x").unwrap()).is_err());
        assert_eq!(rhs(unary_conv(&sets), "\\x. sin (x + 1)"), "sin o (\\x. x + 1)");
        assert!(unary_conv(&sets)(&parse_term("\\x. f x").unwrap()).is_err());
        assert_eq!(rhs(binary_conv(&sets), "\\x. sin x + 1"), "Uncurry (+) o <|\\x. sin x, \\x. 1|>");
        assert_eq!(rhs(param_conv(&sets), "\\x. (sin x) ^ 2"), "(\\x. x ^ 2) o (\\x. sin x)");
        assert_eq!(rhs(simp_conv(), "sin o I"), "sin");
    }
}
