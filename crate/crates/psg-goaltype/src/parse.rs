//! Surface syntax: `head(V1,V2) <- lit1(a), !lit2(b).`, `atomic name/arity`,
//! `--` comments, terms written `@{term "..."}`.

use std::collections::HashSet;

use psg_kernel::parse_term;

use crate::ast::{GoalType, GtArg, GtDefs, Literal, Rule};
use crate::error::{GtError, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    EnvRef(String),
    TermLit(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Arrow,
    Bang,
    Slash,
    Eof,
}

fn symbol_name(c: char) -> Option<&'static str> {
    Some(match c {
        '∧' => "conj",
        '∨' => "disj",
        '⇒' => "implies",
        '⇔' => "equiv",
        _ => return None,
    })
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn err<T>(&self, at: usize, msg: impl Into<String>) -> Result<T> {
        Err(position_err(self.src, at, msg))
    }

    fn run(mut self) -> Result<Vec<(Tok, usize)>> {
        let s = self.src;
        let mut it = s.char_indices().peekable();
        while let Some(&(i, c)) = it.peek() {
            if c.is_whitespace() {
                it.next();
                continue;
            }
            if s[i..].starts_with("--") {
                while let Some(&(_, d)) = it.peek() {
                    if d == '\n' {
                        break;
                    }
                    it.next();
                }
                continue;
            }
            if s[i..].starts_with("<-") {
                it.next();
                it.next();
                self.toks.push((Tok::Arrow, i));
                continue;
            }
            if s[i..].starts_with("@{") {
                let rest = &s[i + 2..];
                let body = rest.trim_start();
                let Some(body) = body.strip_prefix("term") else {
                    return self.err(i, "expected `@{term \"...\"}`");
                };
                let body = body.trim_start();
                let Some(body) = body.strip_prefix('"') else {
                    return self.err(i, "expected a quoted term");
                };
                let Some(close) = body.find('"') else {
                    return self.err(i, "unterminated term literal");
                };
                let text = &body[..close];
                let after = body[close + 1..].trim_start();
                let Some(after) = after.strip_prefix('}') else {
                    return self.err(i, "expected `}` after term literal");
                };
                let end = s.len() - after.len();
                self.toks.push((Tok::TermLit(text.to_string()), i));
                while let Some(&(j, _)) = it.peek() {
                    if j >= end {
                        break;
                    }
                    it.next();
                }
                continue;
            }
            let single = match c {
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                ',' => Some(Tok::Comma),
                '.' => Some(Tok::Dot),
                '←' => Some(Tok::Arrow),
                '!' | '¬' => Some(Tok::Bang),
                '/' => Some(Tok::Slash),
                _ => symbol_name(c).map(|n| Tok::Ident(n.to_string())),
            };
            if let Some(t) = single {
                it.next();
                self.toks.push((t, i));
                continue;
            }
            let is_word = |d: char| d.is_alphanumeric() || d == '_' || d == '\'';
            if c == '?' || is_word(c) {
                let start = i;
                it.next();
                let mut end = start + c.len_utf8();
                while let Some(&(j, d)) = it.peek() {
                    if !is_word(d) {
                        break;
                    }
                    end = j + d.len_utf8();
                    it.next();
                }
                let w = &s[start..end];
                if c == '?' {
                    if w.len() == 1 {
                        return self.err(start, "expected a variable name after `?`");
                    }
                    self.toks.push((Tok::EnvRef(w.to_string()), start));
                } else {
                    self.toks.push((Tok::Ident(w.to_string()), start));
                }
                continue;
            }
            return self.err(i, format!("unexpected character `{c}`"));
        }
        self.toks.push((Tok::Eof, s.len()));
        Ok(self.toks)
    }
}

fn position_err(src: &str, at: usize, msg: impl Into<String>) -> GtError {
    let before = &src[..at.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    GtError::Parse { line, col, msg: msg.into() }
}

fn is_gvar(w: &str) -> bool {
    w.starts_with(|c: char| c.is_uppercase() || c == '_')
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    anon: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Parser<'a>> {
        let toks = Lexer { src, toks: Vec::new() }.run()?;
        Ok(Parser { src, toks, pos: 0, anon: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(position_err(self.src, self.at(), msg))
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn pred_name(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(w) if !is_gvar(&w) => {
                self.bump();
                Ok(w)
            }
            Tok::Ident(w) => self.err(format!("predicate name `{w}` must not be capitalised")),
            _ => self.err("expected a predicate name"),
        }
    }

    fn arg(&mut self) -> Result<GtArg> {
        let at = self.at();
        match self.bump() {
            Tok::Ident(w) if w == "_" => {
                self.anon += 1;
                Ok(GtArg::GVar(format!("_{}", self.anon)))
            }
            Tok::Ident(w) if is_gvar(&w) => Ok(GtArg::GVar(w)),
            Tok::Ident(w) => Ok(GtArg::Name(w)),
            Tok::EnvRef(v) => Ok(GtArg::EnvRef(v)),
            Tok::TermLit(text) => parse_term(&text)
                .map(GtArg::TermLit)
                .map_err(|e| position_err(self.src, at, format!("in term literal: {e}"))),
            _ => Err(position_err(self.src, at, "expected an argument")),
        }
    }

    fn literal(&mut self) -> Result<Literal> {
        let negated = if *self.peek() == Tok::Bang {
            self.bump();
            true
        } else {
            false
        };
        let pred = self.pred_name()?;
        let mut args = Vec::new();
        if *self.peek() == Tok::LParen {
            self.bump();
            if *self.peek() != Tok::RParen {
                loop {
                    args.push(self.arg()?);
                    if *self.peek() == Tok::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
            }
            self.expect(Tok::RParen, "`)`")?;
        }
        Ok(Literal { negated, pred, args })
    }

    fn body(&mut self) -> Result<GoalType> {
        let mut clauses = vec![self.literal()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            clauses.push(self.literal()?);
        }
        Ok(GoalType { clauses })
    }

    fn defs(&mut self) -> Result<GtDefs> {
        let mut out = GtDefs::default();
        while *self.peek() != Tok::Eof {
            if matches!(self.peek(), Tok::Ident(w) if w == "atomic") {
                self.bump();
                let name = self.pred_name()?;
                self.expect(Tok::Slash, "`/`")?;
                let arity = match self.bump() {
                    Tok::Ident(n) => n.parse::<usize>().ok(),
                    _ => None,
                };
                let Some(arity) = arity else {
                    return self.err("expected an arity");
                };
                if *self.peek() == Tok::Dot {
                    self.bump();
                }
                out.atomics.push((name, arity));
                continue;
            }
            let name = self.pred_name()?;
            let mut formals: Vec<String> = Vec::new();
            if *self.peek() == Tok::LParen {
                self.bump();
                if *self.peek() != Tok::RParen {
                    loop {
                        match self.peek().clone() {
                            Tok::Ident(w) if is_gvar(&w) && w != "_" => {
                                if formals.contains(&w) {
                                    return self.err(format!("duplicate head variable `{w}`"));
                                }
                                self.bump();
                                formals.push(w);
                            }
                            _ => return self.err("head arguments must be capitalised variables"),
                        }
                        if *self.peek() == Tok::Comma {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Tok::RParen, "`)`")?;
            }
            self.expect(Tok::Arrow, "`<-`")?;
            let body = self.body()?;
            self.expect(Tok::Dot, "`.` at the end of the rule")?;
            out.rules.push(Rule { name, formals, body });
        }
        Ok(out)
    }
}

pub fn parse_defs(text: &str) -> Result<GtDefs> {
    Parser::new(text)?.defs()
}

/// A goal type for a wire: no goal-type variables allowed.
pub fn parse_goaltype(text: &str) -> Result<GoalType> {
    let gt = parse_goaltype_schema(text)?;
    for c in &gt.clauses {
        for a in &c.args {
            if let GtArg::GVar(v) = a {
                let shown = if v.starts_with('_') { "_" } else { v.as_str() };
                return Err(GtError::GVarOnWire(shown.to_string()));
            }
        }
    }
    Ok(gt)
}

/// A clause body, possibly mentioning goal-type variables.
pub fn parse_goaltype_schema(text: &str) -> Result<GoalType> {
    let mut p = Parser::new(text)?;
    if *p.peek() == Tok::Eof {
        return p.err("empty goal type");
    }
    let gt = p.body()?;
    if *p.peek() == Tok::Dot {
        p.bump();
    }
    if *p.peek() != Tok::Eof {
        return p.err("unexpected input after goal type");
    }
    Ok(gt)
}

/// Predicates referenced by `defs` that are neither defined nor in `known`.
pub fn undefined_predicates(defs: &GtDefs, known: &dyn Fn(&str) -> bool) -> Vec<String> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in &defs.rules {
        for c in &r.body.clauses {
            if !defs.defines(&c.pred) && !known(&c.pred) && seen.insert(c.pred.clone()) {
                out.push(c.pred.clone());
            }
        }
    }
    out
}
