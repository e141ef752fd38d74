//! Text syntax for polynomials and exterior elements, e.g. `3*t1^2*u2 - 1/2*t3 + u1*u3`.
//!
//! Odd generators may appear in any order; the parser normalizes them with signs.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring, Var};
use crate::superalg::{ExtElement, ExtSubset, OddKind, UVars};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i].parse().expect("digits");
                out.push((start, Tok::Num(n)));
                continue;
            }
            'a'..='z' => {
                while i < bytes.len() && bytes[i].is_ascii_lowercase() {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Ident(s[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, K> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Arc<Ring>,
    _k: std::marker::PhantomData<K>,
}

impl<K: OddKind> Parser<'_, K> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<ExtElement<K>> {
        let mut acc = ExtElement::zero(self.ring);
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            let t = self.term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
            first = false;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ExtElement<K>> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.ext_mul(&f);
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1);
        }
        self.pos += 1;
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                u32::try_from(n).or_else(|_| self.err("exponent too large"))
            }
            _ => self.err("expected exponent"),
        }
    }

    fn factor(&mut self) -> Result<ExtElement<K>> {
        let field = self.ring.field();
        match self.peek().cloned() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let den = if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) => {
                            self.pos += 1;
                            d
                        }
                        _ => return self.err("expected denominator"),
                    }
                } else {
                    BigInt::from(1)
                };
                let c = field.from_fraction(&n, &den).map_err(|e| Error::Parse {
                    pos: self.offset(),
                    msg: e.to_string(),
                })?;
                let e = self.exponent()?;
                Ok(ExtElement::from_poly(Polynomial::constant(self.ring, c.pow(e as u64))))
            }
            Some(Tok::Ident(name)) => {
                let at = self.offset();
                self.pos += 1;
                let e = self.exponent()?;
                if let Some(v) = Var::parse(&name) {
                    let p = Polynomial::var(self.ring, v).map_err(|_| Error::Parse {
                        pos: at,
                        msg: format!("variable {name} is not in {}", self.ring),
                    })?;
                    return Ok(ExtElement::from_poly(p.pow(e)));
                }
                let idx = name
                    .strip_prefix(K::PREFIX)
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&i| (1..=ExtSubset::MAX_INDEX).contains(&i));
                match idx {
                    Some(i) if e == 1 => Ok(ExtElement::odd_monomial(self.ring, ExtSubset::singleton(i))),
                    Some(_) => Ok(ExtElement::zero(self.ring)),
                    None => Err(Error::Parse {
                        pos: at,
                        msg: format!("unknown identifier {name}"),
                    }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                let e = self.exponent()?;
                let mut acc = ExtElement::from_poly(Polynomial::one(self.ring));
                for _ in 0..e {
                    acc = acc.ext_mul(&inner);
                }
                Ok(acc)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse an element of `ring ⊗ Λ[K-generators]`.
pub fn parse_ext<K: OddKind>(text: &str, ring: &Arc<Ring>) -> Result<ExtElement<K>> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser::<K> {
        toks,
        pos: 0,
        end: text.len(),
        ring,
        _k: std::marker::PhantomData,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parse a polynomial; odd generators are rejected.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
    let e = parse_ext::<UVars>(text, ring)?;
    if e.components().keys().any(|k| !k.is_empty()) {
        return Err(Error::Parse {
            pos: 0,
            msg: "odd generator in a polynomial".into(),
        });
    }
    Ok(e.component(ExtSubset::empty()))
}
