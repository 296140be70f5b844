//! Pretty-printer producing the ASCII concrete syntax read by `parse_term`.

use crate::sig;
use crate::term::{Term, TermKind};

const BINDER: u8 = 0;
const UNARY: u8 = 9;
const APP: u8 = 10;
const ATOM: u8 = 11;

fn infix_of(name: &str) -> Option<(&'static str, u8, i8)> {
    // (spelling, precedence, assoc: -1 left, 1 right, 0 none)
    Some(match name {
        sig::IFF => ("<=>", 1, 1),
        sig::IMP => ("=>", 2, 1),
        sig::DISJ => ("\\/", 3, 1),
        sig::CONJ => ("/\\", 4, 1),
        sig::EQ => ("=", 5, 0),
        sig::LT => ("<", 5, 0),
        sig::LE => ("<=", 5, 0),
        sig::COMP => ("o", 6, 1),
        sig::PLUS => ("+", 7, 1),
        sig::POW => ("^", 8, -1),
        _ => return None,
    })
}

fn const_spelling(name: &str) -> String {
    if let Some((s, _, _)) = infix_of(name) {
        return format!("({s})");
    }
    match name {
        sig::NEG => "(~)".into(),
        sig::FORALL => "(!)".into(),
        sig::FST => "pi1".into(),
        sig::SND => "pi2".into(),
        other => other.to_string(),
    }
}

pub fn print_term(t: &Term) -> String {
    let mut s = String::new();
    pp(t, 0, &mut s);
    s
}

fn paren(out: &mut String, on: bool, f: impl FnOnce(&mut String)) {
    if on {
        out.push('(');
    }
    f(out);
    if on {
        out.push(')');
    }
}

fn pp(t: &Term, ctx: u8, out: &mut String) {
    match t.kind() {
        TermKind::Var(v) => out.push_str(&v.name),
        TermKind::Const(c) => out.push_str(&const_spelling(c)),
        TermKind::Abs(..) | TermKind::PairAbs(..) => paren(out, ctx > BINDER, |o| pp_lambda(t, o)),
        TermKind::App(..) => pp_app(t, ctx, out),
    }
}

fn pp_lambda(t: &Term, out: &mut String) {
    out.push('\\');
    let mut body = t;
    match t.kind() {
        TermKind::PairAbs(v1, v2, b) => {
            out.push_str(&format!("({}, {})", v1.name, v2.name));
            body = b;
        }
        _ => {
            let mut first = true;
            while let TermKind::Abs(v, b) = body.kind() {
                if !first {
                    out.push(' ');
                }
                out.push_str(&v.name);
                first = false;
                body = b;
            }
        }
    }
    out.push_str(". ");
    pp(body, BINDER, out);
}

fn pp_app(t: &Term, ctx: u8, out: &mut String) {
    if let Some((_, _)) = t.dest_forall() {
        paren(out, ctx > BINDER, |o| {
            o.push('!');
            let mut body = t;
            let mut first = true;
            while let Some((v, b)) = body.dest_forall() {
                if !first {
                    o.push(' ');
                }
                o.push_str(&v.name);
                first = false;
                body = b;
            }
            o.push_str(". ");
            pp(body, BINDER, o);
        });
        return;
    }
    if let Some((c, a, b)) = t.dest_ite() {
        paren(out, ctx > BINDER, |o| {
            o.push_str("if ");
            pp(c, BINDER, o);
            o.push_str(" then ");
            pp(a, BINDER, o);
            o.push_str(" else ");
            pp(b, BINDER, o);
        });
        return;
    }
    if let Some(x) = t.dest_neg() {
        paren(out, ctx > UNARY, |o| {
            o.push('~');
            pp(x, UNARY, o);
        });
        return;
    }
    if let Some((a, b)) = t.dest_pair() {
        out.push('(');
        pp(a, BINDER, out);
        let mut rest = b;
        while let Some((x, y)) = rest.dest_pair() {
            out.push_str(", ");
            pp(x, BINDER, out);
            rest = y;
        }
        out.push_str(", ");
        pp(rest, BINDER, out);
        out.push(')');
        return;
    }
    if let Some(p) = t.dest_unop(sig::FORK) {
        if let Some((f, g)) = p.dest_pair() {
            out.push_str("<|");
            pp(f, BINDER, out);
            out.push_str(", ");
            pp(g, BINDER, out);
            out.push_str("|>");
            return;
        }
    }
    let (fa, b) = t.dest_app().unwrap();
    if let Some((f, a)) = fa.dest_app() {
        if let Some((sp, prec, assoc)) = f.const_name().and_then(infix_of) {
            paren(out, ctx > prec, |o| {
                pp(a, if assoc < 0 { prec } else { prec + 1 }, o);
                o.push(' ');
                o.push_str(sp);
                o.push(' ');
                pp(b, if assoc > 0 { prec } else { prec + 1 }, o);
            });
            return;
        }
    }
    paren(out, ctx > APP, |o| {
        pp(fa, APP, o);
        o.push(' ');
        pp(b, ATOM, o);
    });
}

#[cfg(test)]
mod tests {
    use crate::parse::parse_term;

    fn round(s: &str) -> String {
        parse_term(s).unwrap().to_string()
    }

    #[test]
    fn prints_canonical() {
        assert_eq!(round("A/\\B"), "A /\\ B");
        assert_eq!(round("(A /\\ B) /\\ C"), "(A /\\ B) /\\ C");
        assert_eq!(round("A /\\ (B /\\ C)"), "A /\\ B /\\ C");
        assert_eq!(round("~(A \\/ B)"), "~(A \\/ B)");
        assert_eq!(round("~ ~A"), "~~A");
        assert_eq!(round("(\\x. \\f. f x) 1"), "(\\x f. f x) 1");
        assert_eq!(round("if a then b else c"), "if a then b else c");
        assert_eq!(round("!a. ~~a <=> a"), "!a. ~~a <=> a");
        assert_eq!(round("<|sin o pi1, K 1|>"), "<|sin o pi1, K 1|>");
        assert_eq!(round("Uncurry (+)"), "Uncurry (+)");
    }

    #[test]
    fn reparse_is_identity() {
        for s in [
            "\\(x, y). (sin x + cos y + 1) ^ 2",
            "(\\x. x ^ 2) o Uncurry (+) o <|sin o pi1, Uncurry (+) o <|cos o pi2, K 1|>|>",
            "(A => B) => A",
            "f (\\x. x) = g",
            "(a, b, c)",
        ] {
            let t = parse_term(s).unwrap();
            let u = parse_term(&t.to_string()).unwrap();
            assert_eq!(t, u, "{s}");
        }
    }
}
