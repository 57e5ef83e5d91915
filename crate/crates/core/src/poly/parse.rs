//! Text grammar for polynomials: integer and `p/q` rational literals,
//! variable identifiers, `+`, `-`, `*`, `^` with nonnegative integer
//! exponents, and parentheses. Implicit multiplication is not allowed.

use num_bigint::BigInt;

use crate::arith::Rat;

use super::{Polynomial, Var, VarOrder};

/// Parse failure with 1-based line/column position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at {line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

fn position(src: &[u8], pos: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for &b in &src[..pos.min(src.len())] {
        if b == b'\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

impl<'a> Lexer<'a> {
    fn error(&self, at: usize, msg: impl Into<String>) -> ParseError {
        let (line, col) = position(self.src, at);
        ParseError { line, col, msg: msg.into() }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let start = self.pos;
            let b = self.src[self.pos];
            match b {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.pos += 1;
                }
                b'+' => {
                    self.pos += 1;
                    out.push((Tok::Plus, start));
                }
                b'-' => {
                    self.pos += 1;
                    out.push((Tok::Minus, start));
                }
                b'*' => {
                    self.pos += 1;
                    out.push((Tok::Star, start));
                }
                b'^' => {
                    self.pos += 1;
                    out.push((Tok::Caret, start));
                }
                b'(' => {
                    self.pos += 1;
                    out.push((Tok::LParen, start));
                }
                b')' => {
                    self.pos += 1;
                    out.push((Tok::RParen, start));
                }
                b'0'..=b'9' => {
                    let num = self.read_integer();
                    if self.pos < self.src.len() && self.src[self.pos] == b'.' {
                        return Err(self.error(self.pos, "decimal literals are not supported; use p/q"));
                    }
                    let value = if self.pos < self.src.len()
                        && self.src[self.pos] == b'/'
                        && self.pos + 1 < self.src.len()
                        && self.src[self.pos + 1].is_ascii_digit()
                    {
                        self.pos += 1;
                        let den = self.read_integer();
                        Rat::new(num, den)
                    } else {
                        Rat::from_integer(num)
                    };
                    out.push((Tok::Number(value), start));
                }
                b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                    let mut end = self.pos + 1;
                    while end < self.src.len()
                        && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
                    {
                        end += 1;
                    }
                    let name = std::str::from_utf8(&self.src[self.pos..end]).unwrap().to_string();
                    self.pos = end;
                    out.push((Tok::Ident(name), start));
                }
                other => {
                    return Err(self.error(start, format!("unexpected character `{}`", other as char)));
                }
            }
        }
        Ok(out)
    }

    fn read_integer(&mut self) -> BigInt {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    toks: Vec<(Tok, usize)>,
    at: usize,
    vars: &'a VarOrder,
}

impl<'a> Parser<'a> {
    fn error_at(&self, idx: usize, msg: impl Into<String>) -> ParseError {
        let pos = self.toks.get(idx).map(|t| t.1).unwrap_or(self.src.len());
        let (line, col) = position(self.src, pos);
        ParseError { line, col, msg: msg.into() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.0.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            negate = true;
        } else if let Some(Tok::Plus) = self.peek() {
            self.bump();
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let idx = self.at;
            match self.bump() {
                Some(Tok::Number(n)) if n.is_integer() && !n.numer().sign().eq(&num_bigint::Sign::Minus) => {
                    let k: u32 = n
                        .to_integer()
                        .try_into()
                        .map_err(|_| self.error_at(idx, "exponent too large"))?;
                    Ok(base.pow(k))
                }
                _ => Err(self.error_at(idx, "expected a nonnegative integer exponent after `^`")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let idx = self.at;
        match self.bump() {
            Some(Tok::Number(r)) => Ok(Polynomial::constant(self.vars.len(), r)),
            Some(Tok::Ident(name)) => match self.vars.index_of(&name) {
                Some(v) => Ok(Polynomial::var(self.vars.len(), v)),
                None => Err(self.error_at(idx, format!("unknown variable `{name}`"))),
            },
            Some(Tok::Minus) => {
                let f = self.factor()?;
                Ok(-&f)
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(self.error_at(self.at.saturating_sub(1), "expected `)`")),
                }
            }
            Some(t) => Err(self.error_at(idx, format!("unexpected token {t:?}"))),
            None => Err(self.error_at(idx, "unexpected end of input")),
        }
    }
}

/// Parses the polynomial text grammar against a fixed variable order.
pub fn parse_poly(src: &str, vars: &VarOrder) -> Result<Polynomial, ParseError> {
    let toks = Lexer { src: src.as_bytes(), pos: 0 }.tokens()?;
    if toks.is_empty() {
        return Err(ParseError { line: 1, col: 1, msg: "empty polynomial".into() });
    }
    let mut parser = Parser { src: src.as_bytes(), toks, at: 0, vars };
    let p = parser.expr()?;
    if parser.at != parser.toks.len() {
        return Err(parser.error_at(parser.at, "trailing input after polynomial"));
    }
    let _ = Var(0);
    Ok(p)
}
