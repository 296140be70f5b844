//! Concrete syntax for terms.
//!
//! ```text
//! term   ::= binder | "if" term "then" term "else" term | infix
//! binder ::= ("\" | "λ") vars "." term        abstraction
//!          | ("\" | "λ") "(" var "," var ")" "." term
//!          | ("!" | "∀") vars "." term        universal quantifier
//! vars   ::= var+          var ::= ident [":" type]
//! infix  ::= operators, loosest first:
//!            <=> ⇔  (right)   => ⇒  (right)   \/ ∨  (right)   /\ ∧  (right)
//!            = < <= ≤  (none)    o ∘  (right)   +  (right)   ^  (left)
//! unary  ::= ("~" | "¬") unary | app
//! app    ::= atom+
//! atom   ::= ident | numeral | "(" term ")" | "(" term "," term ... ")"
//!          | "(" term ":" type ")" | "(" op ")" | "<|" term "," term "|>"
//! type   ::= Bool | Real | Num | type "#" type | type "->" type
//! ```
//!
//! Identifiers that are not constants are variables. Types are inferred
//! by unification; anything left open defaults to `Bool` (numerals to `Num`).

use std::collections::HashMap;

use crate::error::{KernelError, Result};
use crate::sig::{self, Scheme};
use crate::term::{Term, Var};
use crate::ty::Ty;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(&'static str),
    Eof,
}

const SYMS: &[(&str, &str)] = &[
    ("<=>", "<=>"),
    ("\\/", "\\/"),
    ("/\\", "/\\"),
    ("=>", "=>"),
    ("<=", "<="),
    ("<|", "<|"),
    ("|>", "|>"),
    ("->", "->"),
    ("\\", "\\"),
    ("λ", "\\"),
    ("!", "!"),
    ("∀", "!"),
    (".", "."),
    ("(", "("),
    (")", ")"),
    (",", ","),
    ("~", "~"),
    ("¬", "~"),
    ("∧", "/\\"),
    ("∨", "\\/"),
    ("⇒", "=>"),
    ("⇔", "<=>"),
    ("=", "="),
    ("<", "<"),
    ("≤", "<="),
    ("+", "+"),
    ("^", "^"),
    ("∘", "o"),
    ("⟨", "<|"),
    ("⟩", "|>"),
    (":", ":"),
    ("#", "#"),
    ("×", "#"),
];

fn lex(src: &str) -> Result<Vec<(Tok, usize, usize)>> {
    let mut out = Vec::new();
    let mut i = 0;
    let bytes = src.as_bytes();
    'outer: while i < src.len() {
        let c = src[i..].chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < src.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(src[start..i].to_string()), start, i));
            continue;
        }
        if (c.is_alphabetic() && c != 'λ') || c == '_' {
            let start = i;
            while i < src.len() {
                let d = src[i..].chars().next().unwrap();
                if (d.is_alphanumeric() && d != 'λ') || d == '_' || d == '\'' {
                    i += d.len_utf8();
                } else {
                    break;
                }
            }
            let word = &src[start..i];
            if word == "o" {
                out.push((Tok::Sym("o"), start, i));
            } else {
                out.push((Tok::Ident(word.to_string()), start, i));
            }
            continue;
        }
        for (s, canon) in SYMS {
            if src[i..].starts_with(s) {
                out.push((Tok::Sym(canon), i, i + s.len()));
                i += s.len();
                continue 'outer;
            }
        }
        return Err(KernelError::Parse { col: col_of(src, i), msg: format!("unexpected character `{c}`") });
    }
    out.push((Tok::Eof, src.len(), src.len()));
    Ok(out)
}

fn col_of(src: &str, byte: usize) -> usize {
    src[..byte.min(src.len())].chars().count() + 1
}

// ---- untyped syntax

#[derive(Clone, Debug)]
struct Binder {
    name: String,
    ty: Option<Ty>,
}

#[derive(Clone, Debug)]
enum AstKind {
    Name(String),
    Const(&'static str),
    Numeral(String),
    App(Box<Ast>, Box<Ast>),
    Abs(Binder, Box<Ast>),
    PairAbs(Binder, Binder, Box<Ast>),
    Ascribe(Box<Ast>, Ty),
}

#[derive(Clone, Debug)]
struct Ast {
    kind: AstKind,
    span: (usize, usize),
}

impl Ast {
    fn new(kind: AstKind, span: (usize, usize)) -> Ast {
        Ast { kind, span }
    }

    fn app(f: Ast, x: Ast) -> Ast {
        let span = (f.span.0, x.span.1);
        Ast::new(AstKind::App(Box::new(f), Box::new(x)), span)
    }

    fn op(name: &'static str, at: usize, args: Vec<Ast>) -> Ast {
        let mut t = Ast::new(AstKind::Const(name), (at, at));
        let mut first = true;
        for a in args {
            if first {
                t.span.0 = t.span.0.min(a.span.0);
                first = false;
            }
            t = Ast::app(t, a);
        }
        t
    }
}

/// ASCII or Unicode constant spelling to canonical name.
fn const_of_ident(w: &str) -> Option<&'static str> {
    Some(match w {
        "T" => sig::TRUE,
        "F" => sig::FALSE,
        "I" => sig::I,
        "K" => sig::K,
        "Fork" => sig::FORK,
        "Uncurry" => sig::UNCURRY,
        "pi1" | "π1" => sig::FST,
        "pi2" | "π2" => sig::SND,
        "Pair" => sig::PAIR,
        "sin" => sig::SIN,
        "cos" => sig::COS,
        "ite" => sig::ITE,
        _ => return None,
    })
}

fn const_of_sym(s: &str) -> Option<&'static str> {
    Some(match s {
        "~" => sig::NEG,
        "/\\" => sig::CONJ,
        "\\/" => sig::DISJ,
        "=>" => sig::IMP,
        "<=>" => sig::IFF,
        "=" => sig::EQ,
        "<" => sig::LT,
        "<=" => sig::LE,
        "+" => sig::PLUS,
        "^" => sig::POW,
        "o" => sig::COMP,
        "!" => sig::FORALL,
        _ => return None,
    })
}

#[derive(Clone, Copy, PartialEq)]
enum Assoc {
    Left,
    Right,
    Non,
}

fn infix_info(s: &str) -> Option<(u8, Assoc)> {
    Some(match s {
        "<=>" => (1, Assoc::Right),
        "=>" => (2, Assoc::Right),
        "\\/" => (3, Assoc::Right),
        "/\\" => (4, Assoc::Right),
        "=" | "<" | "<=" => (5, Assoc::Non),
        "o" => (6, Assoc::Right),
        "+" => (7, Assoc::Right),
        "^" => (8, Assoc::Left),
        _ => return None,
    })
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> usize {
        self.toks[self.pos].1
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            return 0;
        }
        self.toks[self.pos - 1].2
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(KernelError::Parse { col: col_of(self.src, self.at()), msg: msg.into() })
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if *self.peek() == Tok::Sym(sym_static(s)) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected `{s}`, found {}", describe(self.peek())))
        }
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_kw(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == w)
    }

    fn term(&mut self) -> Result<Ast> {
        self.infix(1)
    }

    fn binder_or_if(&mut self) -> Result<Option<Ast>> {
        let start = self.at();
        if self.is_sym("\\") {
            self.bump();
            if self.is_sym("(") {
                self.bump();
                let b1 = self.binder_var()?;
                self.expect(",")?;
                let b2 = self.binder_var()?;
                self.expect(")")?;
                self.expect(".")?;
                let body = self.term()?;
                let end = body.span.1;
                return Ok(Some(Ast::new(AstKind::PairAbs(b1, b2, Box::new(body)), (start, end))));
            }
            let vs = self.binder_vars()?;
            let body = self.term()?;
            let end = body.span.1;
            let t = vs
                .into_iter()
                .rev()
                .fold(body, |acc, b| Ast::new(AstKind::Abs(b, Box::new(acc)), (start, end)));
            return Ok(Some(t));
        }
        if self.is_sym("!") {
            self.bump();
            let vs = self.binder_vars()?;
            let body = self.term()?;
            let end = body.span.1;
            let t = vs.into_iter().rev().fold(body, |acc, b| {
                let lam = Ast::new(AstKind::Abs(b, Box::new(acc)), (start, end));
                let mut q = Ast::op(sig::FORALL, start, vec![lam]);
                q.span = (start, end);
                q
            });
            return Ok(Some(t));
        }
        if self.is_kw("if") {
            self.bump();
            let c = self.term()?;
            if !self.is_kw("then") {
                return self.err("expected `then`");
            }
            self.bump();
            let a = self.term()?;
            if !self.is_kw("else") {
                return self.err("expected `else`");
            }
            self.bump();
            let b = self.term()?;
            let end = b.span.1;
            let mut t = Ast::op(sig::ITE, start, vec![c, a, b]);
            t.span = (start, end);
            return Ok(Some(t));
        }
        Ok(None)
    }

    fn binder_var(&mut self) -> Result<Binder> {
        match self.bump() {
            Tok::Ident(w) if const_of_ident(&w).is_none() && !is_keyword(&w) => {
                let ty = if self.is_sym(":") {
                    self.bump();
                    Some(self.ty()?)
                } else {
                    None
                };
                Ok(Binder { name: w, ty })
            }
            t => {
                self.pos -= 1;
                self.err(format!("expected a variable, found {}", describe(&t)))
            }
        }
    }

    fn binder_vars(&mut self) -> Result<Vec<Binder>> {
        let mut vs = vec![self.binder_var()?];
        while !self.is_sym(".") {
            vs.push(self.binder_var()?);
        }
        self.bump();
        Ok(vs)
    }

    fn infix(&mut self, min: u8) -> Result<Ast> {
        if let Some(t) = self.binder_or_if()? {
            return Ok(t);
        }
        let mut lhs = self.unary()?;
        loop {
            let s = match self.peek() {
                Tok::Sym(s) => *s,
                _ => break,
            };
            let Some((prec, assoc)) = infix_info(s) else { break };
            if prec < min {
                break;
            }
            let at = self.at();
            self.bump();
            let next = match assoc {
                Assoc::Right => prec,
                Assoc::Left | Assoc::Non => prec + 1,
            };
            let rhs = self.infix(next)?;
            let name = const_of_sym(s).unwrap();
            lhs = Ast::op(name, at, vec![lhs, rhs]);
            if assoc == Assoc::Non {
                if let Tok::Sym(s2) = self.peek() {
                    if infix_info(s2).map(|(p, _)| p) == Some(prec) {
                        return self.err("non-associative operator needs parentheses");
                    }
                }
            }
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.is_sym("~") {
            let at = self.at();
            self.bump();
            let arg = self.unary()?;
            let end = arg.span.1;
            let mut t = Ast::op(sig::NEG, at, vec![arg]);
            t.span = (at, end);
            return Ok(t);
        }
        self.app()
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Ident(w) => !is_keyword(w),
            Tok::Num(_) => true,
            Tok::Sym(s) => matches!(*s, "(" | "<|"),
            Tok::Eof => false,
        }
    }

    fn app(&mut self) -> Result<Ast> {
        let mut t = self.atom()?;
        while self.starts_atom() {
            let x = self.atom()?;
            t = Ast::app(t, x);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Ast> {
        let start = self.at();
        match self.peek().clone() {
            Tok::Ident(w) if !is_keyword(&w) => {
                self.bump();
                let end = self.prev_end();
                let kind = match const_of_ident(&w) {
                    Some(c) => AstKind::Const(c),
                    None => AstKind::Name(w),
                };
                Ok(Ast::new(kind, (start, end)))
            }
            Tok::Num(n) => {
                self.bump();
                let end = self.prev_end();
                Ok(Ast::new(AstKind::Numeral(n), (start, end)))
            }
            Tok::Sym("<|") => {
                self.bump();
                let f = self.term()?;
                self.expect(",")?;
                let g = self.term()?;
                self.expect("|>")?;
                let end = self.prev_end();
                let pair = Ast::op(sig::PAIR, start, vec![f, g]);
                let mut t = Ast::op(sig::FORK, start, vec![pair]);
                t.span = (start, end);
                Ok(t)
            }
            Tok::Sym("(") => {
                self.bump();
                // operator section
                if let Tok::Sym(s) = self.peek().clone() {
                    if let Some(c) = const_of_sym(s) {
                        if self.toks.get(self.pos + 1).map(|t| &t.0) == Some(&Tok::Sym(")")) && s != "!" {
                            self.bump();
                            self.bump();
                            return Ok(Ast::new(AstKind::Const(c), (start, self.prev_end())));
                        }
                    }
                }
                let first = self.term()?;
                if self.is_sym(":") {
                    self.bump();
                    let ty = self.ty()?;
                    self.expect(")")?;
                    return Ok(Ast::new(AstKind::Ascribe(Box::new(first), ty), (start, self.prev_end())));
                }
                let mut items = vec![first];
                while self.is_sym(",") {
                    self.bump();
                    items.push(self.term()?);
                }
                self.expect(")")?;
                let end = self.prev_end();
                let mut it = items.into_iter().rev();
                let mut t = it.next().unwrap();
                for a in it {
                    t = Ast::op(sig::PAIR, a.span.0, vec![a, t]);
                }
                t.span = (start, end);
                Ok(t)
            }
            t => self.err(format!("expected a term, found {}", describe(&t))),
        }
    }

    fn ty(&mut self) -> Result<Ty> {
        let l = self.ty_prod()?;
        if self.is_sym("->") {
            self.bump();
            let r = self.ty()?;
            return Ok(Ty::fun(l, r));
        }
        Ok(l)
    }

    fn ty_prod(&mut self) -> Result<Ty> {
        let l = self.ty_atom()?;
        if self.is_sym("#") {
            self.bump();
            let r = self.ty_prod()?;
            return Ok(Ty::prod(l, r));
        }
        Ok(l)
    }

    fn ty_atom(&mut self) -> Result<Ty> {
        match self.bump() {
            Tok::Ident(w) if w == "Bool" => Ok(Ty::Bool),
            Tok::Ident(w) if w == "Real" => Ok(Ty::Real),
            Tok::Ident(w) if w == "Num" => Ok(Ty::Num),
            Tok::Sym("(") => {
                let t = self.ty()?;
                self.expect(")")?;
                Ok(t)
            }
            t => {
                self.pos -= 1;
                self.err(format!("expected a type, found {}", describe(&t)))
            }
        }
    }
}

fn sym_static(s: &str) -> &'static str {
    SYMS.iter().find(|(_, c)| *c == s).map(|(_, c)| *c).unwrap_or("?")
}

fn is_keyword(w: &str) -> bool {
    matches!(w, "if" | "then" | "else")
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(w) => format!("`{w}`"),
        Tok::Num(n) => format!("`{n}`"),
        Tok::Sym(s) => format!("`{s}`"),
        Tok::Eof => "end of input".into(),
    }
}

// ---- type inference

#[derive(Clone, Debug)]
enum It {
    V(usize),
    Bool,
    Real,
    Num,
    Fun(Box<It>, Box<It>),
    Prod(Box<It>, Box<It>),
}

#[derive(Default)]
struct Infer {
    sub: Vec<Option<It>>,
    numeric: Vec<usize>,
}

impl Infer {
    fn fresh(&mut self) -> It {
        self.sub.push(None);
        It::V(self.sub.len() - 1)
    }

    fn of_ty(t: &Ty) -> It {
        match t {
            Ty::Bool => It::Bool,
            Ty::Real => It::Real,
            Ty::Num => It::Num,
            Ty::Fun(a, b) => It::Fun(Box::new(Infer::of_ty(a)), Box::new(Infer::of_ty(b))),
            Ty::Prod(a, b) => It::Prod(Box::new(Infer::of_ty(a)), Box::new(Infer::of_ty(b))),
        }
    }

    fn of_scheme(&mut self, s: &Scheme, vars: &mut [Option<It>; 3]) -> It {
        match s {
            Scheme::V(i) => {
                let i = *i as usize;
                if vars[i].is_none() {
                    vars[i] = Some(self.fresh());
                }
                vars[i].clone().unwrap()
            }
            Scheme::Bool => It::Bool,
            Scheme::Real => It::Real,
            Scheme::Num => It::Num,
            Scheme::Numeric => {
                let v = self.fresh();
                if let It::V(i) = v {
                    self.numeric.push(i);
                }
                v
            }
            Scheme::Fun(a, b) => It::Fun(Box::new(self.of_scheme(a, vars)), Box::new(self.of_scheme(b, vars))),
            Scheme::Prod(a, b) => It::Prod(Box::new(self.of_scheme(a, vars)), Box::new(self.of_scheme(b, vars))),
        }
    }

    fn walk(&self, t: &It) -> It {
        let mut t = t.clone();
        while let It::V(i) = t {
            match &self.sub[i] {
                Some(u) => t = u.clone(),
                None => break,
            }
        }
        t
    }

    fn occurs(&self, v: usize, t: &It) -> bool {
        match self.walk(t) {
            It::V(w) => v == w,
            It::Fun(a, b) | It::Prod(a, b) => self.occurs(v, &a) || self.occurs(v, &b),
            _ => false,
        }
    }

    fn unify(&mut self, a: &It, b: &It) -> bool {
        let a = self.walk(a);
        let b = self.walk(b);
        match (&a, &b) {
            (It::V(i), It::V(j)) if i == j => true,
            (It::V(i), t) | (t, It::V(i)) => {
                if self.occurs(*i, t) {
                    return false;
                }
                self.sub[*i] = Some(t.clone());
                true
            }
            (It::Bool, It::Bool) | (It::Real, It::Real) | (It::Num, It::Num) => true,
            (It::Fun(a1, b1), It::Fun(a2, b2)) | (It::Prod(a1, b1), It::Prod(a2, b2)) => {
                self.unify(a1, a2) && self.unify(b1, b2)
            }
            _ => false,
        }
    }

    fn resolve(&self, t: &It, default_num: &[usize]) -> Ty {
        match self.walk(t) {
            It::V(i) => {
                if default_num.contains(&i) {
                    Ty::Num
                } else {
                    Ty::Bool
                }
            }
            It::Bool => Ty::Bool,
            It::Real => Ty::Real,
            It::Num => Ty::Num,
            It::Fun(a, b) => Ty::fun(self.resolve(&a, default_num), self.resolve(&b, default_num)),
            It::Prod(a, b) => Ty::prod(self.resolve(&a, default_num), self.resolve(&b, default_num)),
        }
    }
}

/// Typed tree mirroring `Ast` with inference variables attached.
enum Typed {
    Var(String, It),
    Const(String, It),
    App(Box<Typed>, Box<Typed>),
    Abs(String, It, Box<Typed>),
    PairAbs(String, It, String, It, Box<Typed>),
}

struct Ctx<'s> {
    src: &'s str,
    inf: Infer,
    frees: HashMap<String, It>,
}

impl Ctx<'_> {
    fn slice(&self, span: (usize, usize)) -> &str {
        self.src.get(span.0..span.1).unwrap_or("?").trim()
    }

    fn infer(&mut self, ast: &Ast, bound: &mut Vec<(String, It)>) -> Result<(Typed, It)> {
        match &ast.kind {
            AstKind::Name(n) => {
                if let Some((_, t)) = bound.iter().rev().find(|(b, _)| b == n) {
                    return Ok((Typed::Var(n.clone(), t.clone()), t.clone()));
                }
                let t = match self.frees.get(n) {
                    Some(t) => t.clone(),
                    None => {
                        let t = self.inf.fresh();
                        self.frees.insert(n.clone(), t.clone());
                        t
                    }
                };
                Ok((Typed::Var(n.clone(), t.clone()), t))
            }
            AstKind::Const(c) => {
                let sch = sig::scheme(c).unwrap();
                let t = self.inf.of_scheme(&sch, &mut [None, None, None]);
                Ok((Typed::Const(c.to_string(), t.clone()), t))
            }
            AstKind::Numeral(n) => {
                let t = self.inf.of_scheme(&Scheme::Numeric, &mut [None, None, None]);
                Ok((Typed::Const(n.clone(), t.clone()), t))
            }
            AstKind::App(f, x) => {
                let (tf, fty) = self.infer(f, bound)?;
                let (tx, xty) = self.infer(x, bound)?;
                let r = self.inf.fresh();
                let want = It::Fun(Box::new(xty), Box::new(r.clone()));
                if !self.inf.unify(&fty, &want) {
                    return Err(KernelError::Type(format!(
                        "in `{}`: `{}` cannot be applied to `{}`",
                        self.slice(ast.span),
                        self.slice(f.span),
                        self.slice(x.span)
                    )));
                }
                Ok((Typed::App(Box::new(tf), Box::new(tx)), r))
            }
            AstKind::Abs(b, body) => {
                let vt = match &b.ty {
                    Some(t) => Infer::of_ty(t),
                    None => self.inf.fresh(),
                };
                bound.push((b.name.clone(), vt.clone()));
                let r = self.infer(body, bound);
                bound.pop();
                let (tb, bty) = r?;
                Ok((
                    Typed::Abs(b.name.clone(), vt.clone(), Box::new(tb)),
                    It::Fun(Box::new(vt), Box::new(bty)),
                ))
            }
            AstKind::PairAbs(b1, b2, body) => {
                if b1.name == b2.name {
                    return Err(KernelError::Type(format!(
                        "in `{}`: paired abstraction binds `{}` twice",
                        self.slice(ast.span),
                        b1.name
                    )));
                }
                let t1 = b1.ty.as_ref().map(Infer::of_ty).unwrap_or_else(|| self.inf.fresh());
                let t2 = b2.ty.as_ref().map(Infer::of_ty).unwrap_or_else(|| self.inf.fresh());
                bound.push((b1.name.clone(), t1.clone()));
                bound.push((b2.name.clone(), t2.clone()));
                let r = self.infer(body, bound);
                bound.pop();
                bound.pop();
                let (tb, bty) = r?;
                Ok((
                    Typed::PairAbs(b1.name.clone(), t1.clone(), b2.name.clone(), t2.clone(), Box::new(tb)),
                    It::Fun(Box::new(It::Prod(Box::new(t1), Box::new(t2))), Box::new(bty)),
                ))
            }
            AstKind::Ascribe(e, ty) => {
                let (te, et) = self.infer(e, bound)?;
                if !self.inf.unify(&et, &Infer::of_ty(ty)) {
                    return Err(KernelError::Type(format!("`{}` cannot have type {ty}", self.slice(e.span))));
                }
                Ok((te, et))
            }
        }
    }

    fn build(&self, t: &Typed) -> Result<Term> {
        let num = &self.inf.numeric;
        match t {
            Typed::Var(n, it) => Ok(Term::var(n, self.inf.resolve(it, num))),
            Typed::Const(c, it) => Term::constant(c, self.inf.resolve(it, num)),
            Typed::App(f, x) => Term::app(&self.build(f)?, &self.build(x)?),
            Typed::Abs(n, it, b) => Ok(Term::abs(&Var::new(n, self.inf.resolve(it, num)), &self.build(b)?)),
            Typed::PairAbs(n1, i1, n2, i2, b) => Term::pair_abs(
                &Var::new(n1, self.inf.resolve(i1, num)),
                &Var::new(n2, self.inf.resolve(i2, num)),
                &self.build(b)?,
            ),
        }
    }
}

fn parse_ast(src: &str) -> Result<Ast> {
    let toks = lex(src)?;
    let mut p = Parser { src, toks, pos: 0 };
    let t = p.term()?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("unexpected {}", describe(p.peek())));
    }
    Ok(t)
}

/// Parse and type-check a term.
pub fn parse_term(src: &str) -> Result<Term> {
    parse_term_with(src, &[])
}

/// Parse with some free variables' types fixed in advance.
pub fn parse_term_with(src: &str, fixed: &[Var]) -> Result<Term> {
    let ast = parse_ast(src)?;
    let mut cx = Ctx { src, inf: Infer::default(), frees: HashMap::new() };
    for v in fixed {
        cx.frees.insert(v.name.to_string(), Infer::of_ty(&v.ty));
    }
    let (typed, _) = cx.infer(&ast, &mut Vec::new())?;
    cx.build(&typed)
}

/// Parse a Bool-typed term.
pub fn parse_prop(src: &str) -> Result<Term> {
    let t = parse_term(src)?;
    if !t.ty().is_bool() {
        return Err(KernelError::Type(format!("`{}` has type {}, expected Bool", src.trim(), t.ty())));
    }
    Ok(t)
}

/// Split at top-level occurrences of `sep` (outside brackets).
pub fn split_top(src: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut prev = '\0';
    for (i, c) in src.char_indices() {
        match c {
            '(' | '⟨' => depth += 1,
            ')' | '⟩' => depth -= 1,
            '|' if prev == '<' => depth += 1,
            '>' if prev == '|' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&src[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
        prev = c;
    }
    out.push(&src[start..]);
    out
}
