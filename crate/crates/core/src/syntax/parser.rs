//! Recursive-descent parser for the ASCII formula language.
//!
//! ```text
//! formula := disj
//! disj    := conj { "|" conj }
//! conj    := unit { "&" unit }
//! unit    := atom | "!" atom | quant | "(" formula ")"
//! atom    := NAME "(" termlist ")" | term "=" term | term "!=" term
//!          | "dep(" [termlist] ";" termlist ")"
//!          | "mvd(" [varlist] ";" varlist ")"
//!          | "ind(" [varlist] ";" varlist ";" varlist ")"
//! quant   := qhead varlist [ "/(" [varlist] ")" | "\(" [varlist] ")" ] disj
//! qhead   := "exists" | "forall" | "Q[" NAME "]"
//! ```
//!
//! Bound variables may be separated by spaces or commas; the list stops at
//! the first identifier that starts an atom (followed by `(`, `=` or `!=`).

use super::ast::{Formula, Mode, QuantifierRef, Term};
use crate::error::{Error, ParseError, Result};
use crate::model::Var;
use crate::quantifiers::QuantifierRegistry;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Const(String),
    QName(String),
    LParen,
    RParen,
    Comma,
    Semi,
    Amp,
    Pipe,
    Bang,
    Eq,
    Neq,
    Slash,
    Backslash,
    End,
}

const KEYWORDS: [&str; 5] = ["exists", "forall", "dep", "mvd", "ind"];

fn is_var_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let ident_end = |mut j: usize| {
        while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b';' => Tok::Semi,
            b'&' => Tok::Amp,
            b'|' => Tok::Pipe,
            b'=' => Tok::Eq,
            b'/' => Tok::Slash,
            b'\\' => Tok::Backslash,
            b'!' if bytes.get(i + 1) == Some(&b'=') => {
                i += 1;
                Tok::Neq
            }
            b'!' => Tok::Bang,
            b'#' => {
                let end = ident_end(i + 1);
                if end == i + 1 {
                    return Err(ParseError::new(i, "expected a constant name after `#`"));
                }
                let name = text[i + 1..end].to_string();
                i = end;
                out.push((Tok::Const(name), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let end = ident_end(i);
                let word = &text[i..end];
                if word == "Q" && bytes.get(end) == Some(&b'[') {
                    let close = text[end..]
                        .find(']')
                        .map(|k| end + k)
                        .ok_or_else(|| ParseError::new(end, "unterminated `Q[`"))?;
                    let name = text[end + 1..close].trim();
                    if name.is_empty() {
                        return Err(ParseError::new(end, "empty quantifier name"));
                    }
                    i = close + 1;
                    out.push((Tok::QName(name.to_string()), start));
                } else {
                    i = end;
                    out.push((Tok::Ident(word.to_string()), start));
                }
                continue;
            }
            _ => {
                return Err(ParseError::new(
                    i,
                    format!("unexpected character `{}`", text[i..].chars().next().unwrap()),
                ))
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    registry: Option<&'a QuantifierRegistry>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError::new(self.offset(), msg))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn disj(&mut self) -> PResult<Formula> {
        let mut f = self.conj()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let r = self.conj()?;
            f = Formula::or(f, r);
        }
        Ok(f)
    }

    fn conj(&mut self) -> PResult<Formula> {
        let mut f = self.unit()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let r = self.unit()?;
            f = Formula::and(f, r);
        }
        Ok(f)
    }

    fn unit(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                match self.peek() {
                    Tok::LParen => self.err("negation may only be applied to an atomic formula"),
                    Tok::QName(_) => self.err("negation may only be applied to an atomic formula"),
                    Tok::Ident(w) if w == "exists" || w == "forall" => {
                        self.err("negation may only be applied to an atomic formula")
                    }
                    Tok::Bang => self.err("double negation is not in negation normal form"),
                    _ => self.atom(true),
                }
            }
            Tok::LParen => {
                self.bump();
                let f = self.disj()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(w) if w == "exists" => {
                self.bump();
                self.quant(QuantifierRef::Exists)
            }
            Tok::Ident(w) if w == "forall" => {
                self.bump();
                self.quant(QuantifierRef::Forall)
            }
            Tok::QName(name) => {
                self.bump();
                self.quant(QuantifierRef::Named(name))
            }
            _ => self.atom(false),
        }
    }

    fn var(&mut self) -> PResult<Var> {
        match self.peek().clone() {
            Tok::Ident(w) if is_var_name(&w) && !KEYWORDS.contains(&w.as_str()) => {
                self.bump();
                Ok(Var::new(w))
            }
            _ => self.err("expected a variable"),
        }
    }

    fn term(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Const(c) => {
                self.bump();
                Ok(Term::Const(c))
            }
            _ => self.var().map(Term::Var),
        }
    }

    /// A possibly empty comma-separated list ending before `stop`.
    fn list<T>(&mut self, stop: &Tok, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        let mut out = Vec::new();
        if self.peek() == stop {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                return Ok(out);
            }
        }
    }

    fn nonempty<T>(&mut self, stop: &Tok, item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        let out = self.list(stop, item)?;
        if out.is_empty() {
            return self.err("expected a nonempty list");
        }
        Ok(out)
    }

    fn atom(&mut self, negated: bool) -> PResult<Formula> {
        let is_call = *self.peek_at(1) == Tok::LParen;
        match self.peek().clone() {
            Tok::Ident(w) if w == "dep" && is_call => {
                self.bump();
                self.bump();
                let determiners = self.list(&Tok::Semi, Self::term)?;
                self.expect(Tok::Semi, "`;`")?;
                let dependents = self.nonempty(&Tok::RParen, Self::term)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Formula::Dep {
                    determiners,
                    dependents,
                    negated,
                })
            }
            Tok::Ident(w) if w == "mvd" && is_call => {
                self.bump();
                self.bump();
                let lhs = self.list(&Tok::Semi, Self::var)?;
                self.expect(Tok::Semi, "`;`")?;
                let rhs = self.nonempty(&Tok::RParen, Self::var)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Formula::Mvd { lhs, rhs, negated })
            }
            Tok::Ident(w) if w == "ind" && is_call => {
                self.bump();
                self.bump();
                let cond = self.list(&Tok::Semi, Self::var)?;
                self.expect(Tok::Semi, "`;`")?;
                let left = self.nonempty(&Tok::Semi, Self::var)?;
                self.expect(Tok::Semi, "`;`")?;
                let right = self.nonempty(&Tok::RParen, Self::var)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Formula::Indep {
                    cond,
                    left,
                    right,
                    negated,
                })
            }
            Tok::Ident(name) if is_call && !KEYWORDS.contains(&name.as_str()) => {
                self.bump();
                self.bump();
                let args = self.list(&Tok::RParen, Self::term)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Formula::Rel {
                    name,
                    args,
                    negated,
                })
            }
            Tok::Ident(_) | Tok::Const(_) => {
                let left = self.term()?;
                let negated = match self.bump() {
                    Tok::Eq => negated,
                    Tok::Neq => !negated,
                    _ => {
                        self.pos -= 1;
                        return self.err("expected `=` or `!=`");
                    }
                };
                let right = self.term()?;
                Ok(Formula::Eq {
                    left,
                    right,
                    negated,
                })
            }
            Tok::End => self.err("unexpected end of input"),
            _ => self.err("expected an atomic formula"),
        }
    }

    fn starts_atom(&self, k: usize) -> bool {
        matches!(self.peek_at(k), Tok::LParen | Tok::Eq | Tok::Neq)
    }

    fn quant(&mut self, quantifier: QuantifierRef) -> PResult<Formula> {
        let head = self.pos - 1;
        let mut vars = vec![self.var()?];
        loop {
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                    vars.push(self.var()?);
                }
                Tok::Ident(w)
                    if is_var_name(w) && !KEYWORDS.contains(&w.as_str()) && !self.starts_atom(1) =>
                {
                    vars.push(self.var()?);
                }
                _ => break,
            }
        }
        let mode = match self.peek() {
            Tok::Slash | Tok::Backslash => {
                let slashed = *self.peek() == Tok::Slash;
                self.bump();
                self.expect(Tok::LParen, "`(` after slash")?;
                let ys = self.list(&Tok::RParen, Self::var)?;
                self.expect(Tok::RParen, "`)`")?;
                if let Some(y) = ys.iter().find(|y| vars.contains(y)) {
                    return self.err(format!("bound variable `{y}` cannot appear in its own slash list"));
                }
                if slashed {
                    Mode::Slashed(ys)
                } else {
                    Mode::Backslashed(ys)
                }
            }
            _ => Mode::Plain,
        };
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(ParseError::new(self.toks[head].1, format!("variable `{v}` bound twice")));
            }
        }
        if let (QuantifierRef::Named(name), Some(reg)) = (&quantifier, self.registry) {
            let at = self.toks[head].1;
            match reg.arity(name) {
                Err(_) => return Err(ParseError::new(at, format!("unknown quantifier `{name}`"))),
                Ok(Some(k)) if k != vars.len() => {
                    return Err(ParseError::new(
                        at,
                        format!("quantifier `{name}` binds {k} variable(s), found {}", vars.len()),
                    ))
                }
                Ok(_) => {}
            }
        }
        let body = self.disj()?;
        Ok(Formula::quant(quantifier, vars, mode, body))
    }
}

fn run(text: &str, registry: Option<&QuantifierRegistry>) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        registry,
    };
    let f = p.disj()?;
    if *p.peek() != Tok::End {
        return Err(Error::Parse(ParseError::new(p.offset(), "unexpected trailing input")));
    }
    Ok(f)
}

/// Parses a formula without resolving quantifier names.
pub fn parse(text: &str) -> Result<Formula> {
    run(text, None)
}

/// Parses a formula, rejecting quantifier names unknown to `registry` and
/// bound-variable lists that do not match a quantifier's arity.
pub fn parse_with(text: &str, registry: &QuantifierRegistry) -> Result<Formula> {
    run(text, Some(registry))
}
