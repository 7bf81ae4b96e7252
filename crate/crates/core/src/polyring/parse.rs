//! Text grammar for polynomials:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := ['-'] atom ['^' integer]
//! atom   := integer ['/' integer] | identifier | '(' expr ')'
//! ```
//!
//! Juxtaposition such as `2x1` or `(x1)(x2)` is rejected.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{Coeff, Polynomial};
use super::ring::VarRing;
use super::PolyError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Coeff),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn syntax(pos: usize, msg: impl Into<String>) -> PolyError {
    PolyError::Syntax { pos, msg: msg.into() }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = text[start..i].parse().expect("digits");
                let mut value = Coeff::from_integer(num);
                if i < bytes.len() && bytes[i] == b'/' {
                    let dstart = i + 1;
                    let mut j = dstart;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == dstart {
                        return Err(syntax(i, "expected denominator after `/`"));
                    }
                    let den: BigInt = text[dstart..j].parse().expect("digits");
                    if den.is_zero() {
                        return Err(syntax(dstart, "zero denominator"));
                    }
                    value /= Coeff::from_integer(den);
                    i = j;
                }
                out.push((Tok::Num(value), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            '/' => return Err(syntax(i, "division is only allowed inside rational literals")),
            other => return Err(syntax(i, format!("unexpected character `{other}`"))),
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    ring: &'a Arc<VarRing>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = if *self.peek() == Tok::Minus {
            self.bump();
            -self.term()?
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::LParen => {
                    return Err(syntax(self.pos(), "implicit multiplication; use `*`"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Tok::Num(n) if n.is_integer() && n >= Coeff::zero() => {
                    let e: u32 = n.to_integer().try_into().map_err(|_| syntax(pos, "exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(syntax(pos, "expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(c) => Ok(Polynomial::constant(self.ring, c)),
            Tok::Ident(name) => match self.ring.index_of(&name) {
                Some(i) => Ok(Polynomial::var(self.ring, i)),
                None => Err(PolyError::UnknownVariable { name, pos }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.pos();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    _ => Err(syntax(close, "expected `)`")),
                }
            }
            Tok::End => Err(syntax(pos, "unexpected end of input")),
            other => Err(syntax(pos, format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_poly(text: &str, ring: &Arc<VarRing>) -> Result<Polynomial, PolyError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, ring };
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        Tok::RParen => Err(syntax(p.pos(), "unbalanced `)`")),
        _ => Err(syntax(p.pos(), "trailing input")),
    }
}
