//! Sparse commutative polynomials with exact rational coefficients.
//!
//! `Poly` is the storage type shared by the Cox ring `S`, the symbol ring
//! `S' = k[x, xi]`, and the eigenvalue rings `W = k[theta]`, `W' = k[vartheta]`.
//! Terms live in a `BTreeMap` keyed by exponent vectors, so iteration order
//! (and therefore printing) is deterministic.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational coefficient.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational the way the expression parser reads it back (`-3`, `1/2`).
pub fn fmt_rational(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(e, Q::one())
    }

    pub fn monomial(exp: Vec<u32>, c: Q) -> Self {
        let mut p = Poly::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Q)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: Q) {
        assert_eq!(exp.len(), self.nvars, "exponent arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars);
        let mut total = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            total += t;
        }
        total
    }

    pub fn eval_int(&self, point: &[i64]) -> Q {
        let pt: Vec<Q> = point.iter().map(|&v| q(v)).collect();
        self.eval(&pt)
    }

    /// Substitutes `images[i]` for variable `i`.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = &t * &img.pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Lexicographically largest exponent (variable 0 most significant).
    pub fn lex_leading(&self) -> Option<(&Vec<u32>, &Q)> {
        self.terms.iter().next_back()
    }

    /// Rescales so that the lex-leading coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.lex_leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Exact division in lex order. Returns `(quotient, remainder)`; the
    /// remainder is zero exactly when `divisor` divides `self`.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (lead_e, lead_c) = divisor.lex_leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut quotient = Poly::zero(self.nvars);
        let mut rem = Poly::zero(self.nvars);
        let mut work = self.clone();
        while let Some((e, c)) = work.lex_leading().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&lead_e).all(|(a, b)| a >= b) {
                let qe: Vec<u32> = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
                let qc = &c / &lead_c;
                let step = Poly::monomial(qe, qc);
                work = &work - &(&step * divisor);
                quotient = &quotient + &step;
            } else {
                work.terms.remove(&e);
                rem.add_term(e, c);
            }
        }
        (quotient, rem)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Pads with `extra` new variables placed after the existing ones.
    pub fn extend_vars(&self, extra: usize) -> Poly {
        Poly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.extend(std::iter::repeat_n(0, extra));
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Renders with the given variable names, largest lex term first.
    pub fn render(&self, names: &[String]) -> String {
        render_terms(self.terms.iter().rev().map(|(e, c)| (c, monomial_string(e, names))))
    }
}

pub(crate) fn monomial_string(e: &[u32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (k, name) in e.iter().zip(names) {
        match k {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{k}")),
        }
    }
    parts.join("*")
}

/// Joins `(coefficient, monomial)` pairs as `3*x1 - 1/2*x2 + 1`.
pub(crate) fn render_terms<'a>(terms: impl Iterator<Item = (&'a Q, String)>) -> String {
    let mut out = String::new();
    for (i, (c, mono)) in terms.enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&fmt_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            let _ = write!(out, "{}*{}", fmt_rational(&abs), mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(i: usize) -> Poly {
        Poly::var(2, i)
    }

    #[test]
    fn division_detects_factors() {
        let h = &th(0) * &(&th(0) - &Poly::constant(2, q(1)));
        let g = &h * &(&th(1) + &Poly::constant(2, q(3)));
        assert!(h.divides(&g));
        assert!(!h.divides(&th(0)));
        let (quot, rem) = g.div_rem(&h);
        assert!(rem.is_zero());
        assert_eq!(&quot * &h, g);
    }

    #[test]
    fn compose_substitutes_linear_forms() {
        // theta1 + 2*theta2 under theta1 -> v, theta2 -> -v
        let p = &th(0) + &th(1).scale(&q(2));
        let v = Poly::var(1, 0);
        let img = p.compose(&[v.clone(), -&v]);
        assert_eq!(img, -&v);
    }

    #[test]
    fn render_is_parseable_shape() {
        let p = Poly::from_terms(2, [(vec![1, 0], q_frac(-1, 2)), (vec![0, 0], q(3)), (vec![0, 2], q(1))]);
        assert_eq!(p.render(&var_names("x", 2)), "-1/2*x1 + x2^2 + 3");
        assert_eq!(Poly::zero(2).render(&var_names("x", 2)), "0");
    }
}
