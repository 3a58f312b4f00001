//! A small expression parser shared by all element types.
//!
//! Grammar: sums of products of factors, where a factor is a rational
//! literal, an indexed variable such as `x3`, `d1` or `th2`, or a
//! parenthesized expression, optionally raised to a nonnegative integer power.
//! `/` is only allowed with a numeric right-hand side.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::poly::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at offset {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { position, message: message.into() })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Q),
    /// Variable name without its index, and the 1-based index.
    Var(String, usize),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Div(Box<Expr>, Q),
}

/// Interpretation of parsed expressions in a concrete ring.
pub trait Evaluator {
    type Value: Clone;
    fn constant(&self, c: &Q) -> Self::Value;
    /// Looks up `name<index>`; `None` makes evaluation fail.
    fn variable(&self, name: &str, index: usize) -> Option<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
}

impl Expr {
    pub fn eval<E: Evaluator>(&self, ev: &E) -> Result<E::Value, String> {
        Ok(match self {
            Expr::Num(c) => ev.constant(c),
            Expr::Var(name, i) => ev.variable(name, *i).ok_or_else(|| format!("unknown variable {name}{i}"))?,
            Expr::Sum(parts) => {
                let mut acc = ev.constant(&Q::zero());
                for p in parts {
                    acc = ev.add(&acc, &p.eval(ev)?);
                }
                acc
            }
            Expr::Product(parts) => {
                let mut acc = ev.constant(&Q::from_integer(BigInt::from(1)));
                for p in parts {
                    acc = ev.mul(&acc, &p.eval(ev)?);
                }
                acc
            }
            Expr::Neg(e) => ev.neg(&e.eval(ev)?),
            Expr::Pow(e, k) => {
                let base = e.eval(ev)?;
                let mut acc = ev.constant(&Q::from_integer(BigInt::from(1)));
                for _ in 0..*k {
                    acc = ev.mul(&acc, &base);
                }
                acc
            }
            Expr::Div(e, c) => ev.mul(&e.eval(ev)?, &ev.constant(&c.recip())),
        })
    }
}

/// Parses and evaluates in one step; evaluation failures are reported at offset 0.
pub fn parse_with<E: Evaluator>(input: &str, ev: &E) -> Result<E::Value, ParseError> {
    let expr = parse(input)?;
    expr.eval(ev).map_err(|m| ParseError { position: 0, message: m })
}

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { s: input.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.pos == p.s.len() {
        return err(0, "empty expression");
    }
    let e = p.sum()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return err(p.pos, format!("unexpected character '{}'", p.s[p.pos] as char));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut parts = Vec::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.product()?;
            parts.push(if sign { Expr::Neg(Box::new(t)) } else { t });
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Expr::Sum(parts) })
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    acc = match acc {
                        Expr::Product(mut v) => {
                            v.push(rhs);
                            Expr::Product(v)
                        }
                        other => Expr::Product(vec![other, rhs]),
                    };
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let n = self.integer()?;
                    if n.is_zero() {
                        return err(at, "division by zero");
                    }
                    acc = Expr::Div(Box::new(acc), Q::from_integer(n));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let k = self.integer()?;
            let k: u32 =
                k.try_into().map_err(|_| ParseError { position: at, message: "exponent out of range".into() })?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected an integer");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(b')') {
                    return err(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Num(Q::from_integer(self.integer()?))),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap().to_string();
                let at = self.pos;
                if !self.s.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    return err(at, format!("variable '{name}' needs an index"));
                }
                let idx = self.integer()?;
                let idx: usize =
                    idx.try_into().map_err(|_| ParseError { position: at, message: "index out of range".into() })?;
                if idx == 0 {
                    return err(at, "variable indices start at 1");
                }
                Ok(Expr::Var(name, idx))
            }
            Some(c) => err(self.pos, format!("unexpected character '{}'", c as char)),
            None => err(self.pos, "unexpected end of input"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure() {
        assert!(parse("3*x1^2*d1 - 1/2*x2*d2^3").is_ok());
        assert!(parse("-(th1 - 1)*(th2 + 2)").is_ok());
        assert_eq!(parse("").unwrap_err().position, 0);
        assert_eq!(parse("x1 +").unwrap_err().position, 4);
        assert_eq!(parse("x0").unwrap_err().message, "variable indices start at 1");
        assert!(parse("x1 / 0").is_err());
        assert!(parse("x1 x2").is_err());
        assert!(parse("x").is_err());
    }
}
