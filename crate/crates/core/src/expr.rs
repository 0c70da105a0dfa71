//! Parsing of polynomial and series expressions such as `-t*x + x^2`,
//! `1/2*x1^2` or `b^-1*x`.
//!
//! Identifiers name either ring generators or series variables. Division is
//! allowed by numbers only; negative exponents need an invertible base.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{RingElement, RingSpec};
use crate::scalar::Rational;
use crate::series::{SeriesCtx, TruncatedSeries};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(i64),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| Error::Parse(format!("number `{s}` is too large")))?;
            out.push(Token::Num(n));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// What an expression is evaluated into.
trait Algebra: Sized + Clone {
    fn number(&self, r: &Rational) -> Result<Self>;
    fn ident(&self, name: &str) -> Result<Self>;
    fn add(&self, o: &Self) -> Result<Self>;
    fn mul(&self, o: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn pow(&self, e: i32) -> Result<Self>;
}

#[derive(Clone)]
struct RingAlg {
    spec: Arc<RingSpec>,
    value: RingElement,
}

impl RingAlg {
    fn wrap(&self, value: RingElement) -> Self {
        RingAlg { spec: self.spec.clone(), value }
    }
}

impl Algebra for RingAlg {
    fn number(&self, r: &Rational) -> Result<Self> {
        Ok(self.wrap(RingElement::from_scalar(&self.spec, self.spec.scalar_from_rational(r)?)))
    }
    fn ident(&self, name: &str) -> Result<Self> {
        RingElement::generator(&self.spec, name)
            .map(|g| self.wrap(g))
            .map_err(|_| Error::Parse(format!("unknown name `{name}`")))
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self.wrap(self.value.add(&o.value)?))
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self.wrap(self.value.mul(&o.value)?))
    }
    fn neg(&self) -> Self {
        self.wrap(self.value.neg())
    }
    fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 {
            self.value
                .inverse()
                .ok_or_else(|| Error::Parse(format!("`{}` is not invertible", self.value)))?
        } else {
            self.value.clone()
        };
        Ok(self.wrap(base.pow(e.unsigned_abs())))
    }
}

#[derive(Clone)]
struct SeriesAlg {
    ctx: Arc<SeriesCtx>,
    value: TruncatedSeries,
}

impl SeriesAlg {
    fn wrap(&self, value: TruncatedSeries) -> Self {
        SeriesAlg { ctx: self.ctx.clone(), value }
    }
}

impl Algebra for SeriesAlg {
    fn number(&self, r: &Rational) -> Result<Self> {
        let ring = self.ctx.ring();
        let c = RingElement::from_scalar(ring, ring.scalar_from_rational(r)?);
        Ok(self.wrap(TruncatedSeries::constant(&self.ctx, &c)?))
    }
    fn ident(&self, name: &str) -> Result<Self> {
        if let Some(i) = self.ctx.names().iter().position(|n| n == name) {
            return Ok(self.wrap(TruncatedSeries::var(&self.ctx, i)));
        }
        let g = RingElement::generator(self.ctx.ring(), name)
            .map_err(|_| Error::Parse(format!("unknown name `{name}`")))?;
        Ok(self.wrap(TruncatedSeries::constant(&self.ctx, &g)?))
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self.wrap(self.value.add(&o.value)?))
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self.wrap(self.value.mul(&o.value)?))
    }
    fn neg(&self) -> Self {
        self.wrap(self.value.neg())
    }
    fn pow(&self, e: i32) -> Result<Self> {
        if e >= 0 {
            return Ok(self.wrap(self.value.pow(e as u32)));
        }
        let c = self.value.constant_term();
        let is_constant = TruncatedSeries::constant(&self.ctx, &c)?.agrees_with(&self.value);
        let inv = c
            .inverse()
            .filter(|_| is_constant)
            .ok_or_else(|| Error::Parse("negative power of a non-unit".into()))?;
        Ok(self.wrap(TruncatedSeries::constant(&self.ctx, &inv.pow(e.unsigned_abs()))?))
    }
}

struct Parser<'a, A: Algebra> {
    tokens: Vec<Token>,
    pos: usize,
    alg: &'a A,
}

impl<A: Algebra> Parser<'_, A> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<A> {
        let mut acc = if self.eat('-') {
            self.product()?.neg()
        } else {
            self.eat('+');
            self.product()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.product()?)?;
            } else if self.eat('-') {
                acc = acc.add(&self.product()?.neg())?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<A> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?)?;
            } else if self.eat('/') {
                let d = self.divisor()?;
                let inv = d.inv().ok_or_else(|| Error::Parse("division by zero".into()))?;
                acc = acc.mul(&self.alg.number(&inv)?)?;
            } else if matches!(self.peek(), Some(Token::Ident(_)) | Some(Token::Sym('('))) {
                acc = acc.mul(&self.power()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn divisor(&mut self) -> Result<Rational> {
        let n = match self.peek() {
            Some(Token::Num(n)) => *n,
            _ => return Err(Error::Parse("only division by a number is supported".into())),
        };
        self.pos += 1;
        let e = self.exponent()?;
        let mut r = Rational::one();
        for _ in 0..e.unsigned_abs() {
            r = r.mul(&Rational::from_int(n));
        }
        if e < 0 {
            r = r.inv().ok_or_else(|| Error::Parse("division by zero".into()))?;
        }
        Ok(r)
    }

    fn exponent(&mut self) -> Result<i32> {
        if !self.eat('^') {
            return Ok(1);
        }
        let paren = self.eat('(');
        let neg = self.eat('-');
        let e = match self.peek() {
            Some(Token::Num(n)) => i32::try_from(*n).map_err(|_| Error::Parse("exponent too large".into()))?,
            _ => return Err(Error::Parse("expected an integer exponent".into())),
        };
        self.pos += 1;
        if paren && !self.eat(')') {
            return Err(Error::Parse("unclosed exponent".into()));
        }
        Ok(if neg { -e } else { e })
    }

    fn power(&mut self) -> Result<A> {
        let base = match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                self.alg.number(&Rational::from_int(n))?
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                self.alg.ident(&name)?
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let v = self.sum()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                v
            }
            Some(Token::Sym('-')) => {
                self.pos += 1;
                return Ok(self.power()?.neg());
            }
            other => return Err(Error::Parse(format!("unexpected {other:?}"))),
        };
        let e = self.exponent()?;
        if e == 1 {
            Ok(base)
        } else {
            base.pow(e)
        }
    }
}

fn run<A: Algebra>(src: &str, alg: &A) -> Result<A> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { tokens, pos: 0, alg };
    let v = p.sum()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos + 1)));
    }
    Ok(v)
}

/// Parse an element of a coefficient ring.
pub fn parse_ring_element(spec: &Arc<RingSpec>, src: &str) -> Result<RingElement> {
    let alg = RingAlg { spec: spec.clone(), value: RingElement::zero(spec) };
    Ok(run(src, &alg)?.value)
}

/// Parse a polynomial in the context's variables; the result is exact to
/// the context order.
pub fn parse_series(ctx: &Arc<SeriesCtx>, src: &str) -> Result<TruncatedSeries> {
    let alg = SeriesAlg { ctx: ctx.clone(), value: TruncatedSeries::zero(ctx) };
    Ok(run(src, &alg)?.value)
}
