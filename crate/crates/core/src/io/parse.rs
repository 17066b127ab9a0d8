use num_bigint::BigInt;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::poly::{Context, GradedPoly};
use crate::scalar::{Field, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
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
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(s[start..i].parse().expect("digits"))));
                continue;
            }
            a if a.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(s[start..i].to_string())));
                continue;
            }
            other => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ctx: &'a Context,
    warnings: Vec<String>,
}

type P = GradedPoly<Coefficient>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<P> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<P> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.here();
                    let d = self.unary()?;
                    let c = as_constant(&d).ok_or(Error::Parse {
                        pos: at,
                        msg: "divisor must be a nonzero coefficient".into(),
                    })?;
                    acc = acc.scale(&c.inv());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<P> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<P> {
        let start = self.here();
        let (base, odd_symbol) = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let n = match self.peek() {
            Some(Tok::Int(n)) => n.clone(),
            _ => return self.err("expected a non-negative integer exponent"),
        };
        self.pos += 1;
        let n: u32 = n.try_into().map_err(|_| Error::Parse {
            pos: start,
            msg: "exponent too large".into(),
        })?;
        if let Some(name) = odd_symbol {
            if n > 1 {
                self.warnings
                    .push(format!("{name}^{n} at {start} is zero: {name} is a Grassmann variable"));
                return Ok(P::zero());
            }
        }
        Ok(base.pow(n))
    }

    /// An atom, plus the symbol name when it is a single Grassmann variable.
    fn atom(&mut self) -> Result<(P, Option<String>)> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok((
                    P::constant(Coefficient::from_rational(&Rational::from_integer(n))),
                    None,
                ))
            }
            Some(Tok::Ident(name)) => {
                if let Some(v) = self.ctx.lookup(&name) {
                    self.pos += 1;
                    let odd = self.ctx.var(v).is_odd().then(|| name.clone());
                    Ok((P::var(self.ctx, v), odd))
                } else if let Some(i) = self.ctx.param_index(&name) {
                    self.pos += 1;
                    Ok((P::constant(Coefficient::param(i)), None))
                } else {
                    self.err(format!("unknown symbol {name}"))
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok((e, None))
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn as_constant(p: &P) -> Option<Coefficient> {
    if p.len() == 1 {
        let (m, c) = p.leading()?;
        if m.is_one() {
            return Some(c.clone());
        }
    }
    None
}

/// Parse with warnings (Grassmann powers folded to zero).
pub fn parse_poly_with_warnings(text: &str, ctx: &Context) -> Result<(P, Vec<String>)> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        ctx,
        warnings: Vec::new(),
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected token (juxtaposition is not multiplication; use '*')");
    }
    Ok((e, p.warnings))
}

pub fn parse_poly(text: &str, ctx: &Context) -> Result<P> {
    parse_poly_with_warnings(text, ctx).map(|(p, _)| p)
}
