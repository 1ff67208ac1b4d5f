//! Text format for polynomials.
//!
//! A sum of monomials such as `3/8 * tau^2 q y0^2 - y1*y2`; juxtaposition
//! multiplies, parentheses nest, and `/` divides by constants only.
//! Identifiers are the variables of the target [`VarSet`] plus any named
//! generator of the coefficient domain (`t` for Q[t]).

use thiserror::Error;

use super::poly::{Poly, VarSet};
use crate::coeff::Coeff;
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at byte {position}")]
pub struct ParseError {
    pub message: String,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            out.push((pos, Tok::Num(chars[start..i].iter().map(|c| c.1).collect())));
        } else if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|c| c.1).collect())));
        } else if "+-*/^()".contains(ch) {
            out.push((pos, Tok::Op(ch)));
            i += 1;
        } else {
            return Err(ParseError { message: format!("unexpected character `{ch}`"), position: pos });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    vars: VarSet,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.len, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { message: message.into(), position: self.pos() })
    }

    fn expr<C: Coeff>(&mut self) -> Result<Poly<C>, ParseError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.at += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term<C: Coeff>(&mut self) -> Result<Poly<C>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.at += 1;
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                Some(Tok::Op('/')) => {
                    self.at += 1;
                    let rhs = self.unary()?;
                    let Some(c) = rhs.as_constant() else {
                        return self.err("division by a non-constant");
                    };
                    let Some(inv) = C::one().try_div(&c) else {
                        return self.err("division by a non-invertible constant");
                    };
                    acc = acc.scale(&inv);
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('(')) => {
                    let rhs = self.power()?;
                    acc = &acc * &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary<C: Coeff>(&mut self) -> Result<Poly<C>, ParseError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.at += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Op('+')) => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power<C: Coeff>(&mut self) -> Result<Poly<C>, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.at += 1;
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return self.err("expected a non-negative integer exponent");
            };
            self.at += 1;
            let e: u32 = n.parse().map_err(|_| ParseError { message: "exponent too large".into(), position: self.pos() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom<C: Coeff>(&mut self) -> Result<Poly<C>, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                let q: Q = Q::from_integer(n.parse().expect("digits"));
                Ok(Poly::constant(self.vars, C::from_rational(&q)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if let Some(v) = self.vars.index_of(&name) {
                    Ok(Poly::var(self.vars, v))
                } else if let Some(c) = C::symbol(&name) {
                    Ok(Poly::constant(self.vars, c))
                } else {
                    self.at -= 1;
                    self.err(format!("unknown identifier `{name}` for {} polynomials", self.vars.name()))
                }
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return self.err("expected `)`");
                }
                self.at += 1;
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial over the given variable set.
pub fn parse_poly<C: Coeff>(text: &str, vars: VarSet) -> Result<Poly<C>, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, vars, len: text.len() };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Picks the variable set from the identifiers used: any `X*` selects
/// projective, `y3` selects extended, otherwise affine.
pub fn detect_varset(text: &str) -> VarSet {
    let idents: Vec<String> = tokenize(text)
        .map(|ts| ts.into_iter().filter_map(|(_, t)| if let Tok::Ident(s) = t { Some(s) } else { None }).collect())
        .unwrap_or_default();
    if idents.iter().any(|s| s.starts_with('X')) {
        VarSet::Projective
    } else if idents.iter().any(|s| s == "y3") {
        VarSet::Extended
    } else {
        VarSet::Affine
    }
}
