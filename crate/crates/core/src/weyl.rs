//! The Weyl algebra `A = k<x_1..x_d, d_1..d_d>` in normally ordered form
//! `x^a d^b`, its theta form, the anti-involution `tau`, and the action on
//! (Laurent) polynomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::expr::{self, Evaluator, ParseError};
use crate::fan_cox::{ClassElem, GradingData};
use crate::poly::{q, render_terms, Poly, Q};

/// `x^x d^dx`. Ordered lexicographically by `x`, then `dx`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylMonomial {
    pub x: Vec<u32>,
    pub dx: Vec<u32>,
}

impl WeylMonomial {
    pub fn one(d: usize) -> Self {
        WeylMonomial { x: vec![0; d], dx: vec![0; d] }
    }

    /// Exponents laid out as `x_1..x_d, d_1..d_d`.
    pub fn flat(&self) -> Vec<u32> {
        let mut v = self.x.clone();
        v.extend_from_slice(&self.dx);
        v
    }

    pub fn from_flat(v: &[u32]) -> Self {
        let d = v.len() / 2;
        WeylMonomial { x: v[..d].to_vec(), dx: v[d..].to_vec() }
    }

    pub fn order(&self) -> u32 {
        self.dx.iter().sum()
    }

    /// `a - b` for `x^a d^b`.
    pub fn weight(&self) -> Vec<i64> {
        self.x.iter().zip(&self.dx).map(|(&a, &b)| a as i64 - b as i64).collect()
    }

    fn render(&self) -> String {
        let mut parts = Vec::new();
        for (prefix, exps) in [("x", &self.x), ("d", &self.dx)] {
            for (i, &k) in exps.iter().enumerate() {
                match k {
                    0 => {}
                    1 => parts.push(format!("{prefix}{}", i + 1)),
                    _ => parts.push(format!("{prefix}{}^{k}", i + 1)),
                }
            }
        }
        parts.join("*")
    }
}

/// `a (a-1) ... (a-k+1)` for any integer `a`.
pub fn falling(a: i64, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k as i64 {
        acc *= a - j;
    }
    acc
}

fn binomial(n: u32, k: u32) -> BigInt {
    falling(n as i64, k) / falling(k as i64, k)
}

/// Normal-ordered expansion of `(x^alpha d^beta)(x^a d^b)`; monomials are
/// flat exponent vectors (`x` block then `d` block).
pub fn monomial_product(left: &[u32], right: &[u32]) -> Vec<(Vec<u32>, BigInt)> {
    let d = left.len() / 2;
    // Per coordinate: all (k, coefficient) contributions.
    let mut per: Vec<Vec<(u32, BigInt)>> = Vec::with_capacity(d);
    for i in 0..d {
        let beta = left[d + i];
        let a = right[i];
        per.push((0..=beta.min(a)).map(|k| (k, binomial(beta, k) * falling(a as i64, k))).collect());
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; d];
    loop {
        let mut exp = vec![0u32; 2 * d];
        let mut c = BigInt::one();
        for i in 0..d {
            let (k, ref ci) = per[i][idx[i]];
            exp[i] = left[i] + right[i] - k;
            exp[d + i] = left[d + i] + right[d + i] - k;
            c *= ci;
        }
        out.push((exp, c));
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            idx[i] += 1;
            if idx[i] < per[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    d: usize,
    terms: BTreeMap<WeylMonomial, Q>,
}

impl WeylElement {
    pub fn zero(d: usize) -> Self {
        WeylElement { d, terms: BTreeMap::new() }
    }

    pub fn constant(d: usize, c: Q) -> Self {
        let mut w = WeylElement::zero(d);
        w.add_term(WeylMonomial::one(d), c);
        w
    }

    pub fn one(d: usize) -> Self {
        WeylElement::constant(d, Q::one())
    }

    pub fn monomial(m: WeylMonomial, c: Q) -> Self {
        let mut w = WeylElement::zero(m.x.len());
        w.add_term(m, c);
        w
    }

    pub fn x_pow(d: usize, a: &[u32]) -> Self {
        WeylElement::monomial(WeylMonomial { x: a.to_vec(), dx: vec![0; d] }, Q::one())
    }

    pub fn d_pow(d: usize, b: &[u32]) -> Self {
        WeylElement::monomial(WeylMonomial { x: vec![0; d], dx: b.to_vec() }, Q::one())
    }

    pub fn x(d: usize, i: usize) -> Self {
        let mut a = vec![0; d];
        a[i] = 1;
        WeylElement::x_pow(d, &a)
    }

    pub fn dx(d: usize, i: usize) -> Self {
        let mut b = vec![0; d];
        b[i] = 1;
        WeylElement::d_pow(d, &b)
    }

    /// `theta_i = x_i d_i`.
    pub fn theta(d: usize, i: usize) -> Self {
        let mut e = vec![0; d];
        e[i] = 1;
        WeylElement::monomial(WeylMonomial { x: e.clone(), dx: e }, Q::one())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&WeylMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &WeylMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: WeylMonomial, c: Q) {
        assert!(m.x.len() == self.d && m.dx.len() == self.d, "monomial arity mismatch");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Largest monomial in the `(x, dx)` lexicographic order.
    pub fn leading(&self) -> Option<(&WeylMonomial, &Q)> {
        self.terms.iter().next_back()
    }

    /// Highest total derivative order.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.order()).max()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return WeylElement::zero(self.d);
        }
        WeylElement { d: self.d, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Scales so the leading coefficient is positive.
    pub fn sign_normalized(&self) -> Self {
        match self.leading() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = WeylElement::one(self.d);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `f g - g f`.
    pub fn commutator(&self, other: &WeylElement) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn parse(d: usize, s: &str) -> Result<Self, ParseError> {
        expr::parse_with(s, &WeylEval { d })
    }

    pub fn degree_of(gd: &GradingData, m: &WeylMonomial) -> ClassElem {
        gd.degree(&m.weight())
    }

    /// `Some(degree)` if every term has the same class group degree.
    pub fn homogeneous_degree(&self, gd: &GradingData) -> Option<ClassElem> {
        let comps = graded_components(gd, self);
        match comps.len() {
            0 => Some(gd.zero_class()),
            1 => comps.into_keys().next(),
            _ => None,
        }
    }
}

struct WeylEval {
    d: usize,
}

impl Evaluator for WeylEval {
    type Value = WeylElement;
    fn constant(&self, c: &Q) -> WeylElement {
        WeylElement::constant(self.d, c.clone())
    }
    fn variable(&self, name: &str, i: usize) -> Option<WeylElement> {
        if i > self.d {
            return None;
        }
        match name {
            "x" => Some(WeylElement::x(self.d, i - 1)),
            "d" => Some(WeylElement::dx(self.d, i - 1)),
            "th" => Some(WeylElement::theta(self.d, i - 1)),
            _ => None,
        }
    }
    fn add(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        a + b
    }
    fn mul(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        a * b
    }
    fn neg(&self, a: &WeylElement) -> WeylElement {
        -a
    }
}

/// Evaluator for commutative polynomials with variables `<prefix><i>`.
pub struct PolyEval<'a> {
    pub prefixes: &'a [&'a str],
    pub per_prefix: usize,
}

impl Evaluator for PolyEval<'_> {
    type Value = Poly;
    fn constant(&self, c: &Q) -> Poly {
        Poly::constant(self.prefixes.len() * self.per_prefix, c.clone())
    }
    fn variable(&self, name: &str, i: usize) -> Option<Poly> {
        let block = self.prefixes.iter().position(|p| *p == name)?;
        if i > self.per_prefix {
            return None;
        }
        Some(Poly::var(self.prefixes.len() * self.per_prefix, block * self.per_prefix + i - 1))
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a * b
    }
    fn neg(&self, a: &Poly) -> Poly {
        -a
    }
}

/// Parses a polynomial in `th1..th<d>`.
pub fn parse_theta_poly(d: usize, s: &str) -> Result<Poly, ParseError> {
    expr::parse_with(s, &PolyEval { prefixes: &["th"], per_prefix: d })
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self.terms.iter().rev().map(|(m, c)| (c, m.render()))))
    }
}

impl<'a> Add<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &'a WeylElement) -> WeylElement {
        assert_eq!(self.d, rhs.d);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &'a WeylElement) -> WeylElement {
        self + &(-rhs)
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        self.scale(&-Q::one())
    }
}

impl<'a> Mul<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &'a WeylElement) -> WeylElement {
        assert_eq!(self.d, rhs.d);
        let mut out = WeylElement::zero(self.d);
        let right: Vec<Vec<u32>> = rhs.terms.keys().map(|m| m.flat()).collect();
        for (m1, c1) in &self.terms {
            let l = m1.flat();
            for (r, c2) in right.iter().zip(rhs.terms.values()) {
                let c = c1 * c2;
                for (e, k) in monomial_product(&l, r) {
                    out.add_term(WeylMonomial::from_flat(&e), &c * Q::from_integer(k));
                }
            }
        }
        out
    }
}

pub fn weyl_mul(f: &WeylElement, g: &WeylElement) -> WeylElement {
    f * g
}

/// Splits `f` into class group homogeneous parts; `deg x^a d^b = deg x^(a-b)`.
pub fn graded_components(gd: &GradingData, f: &WeylElement) -> BTreeMap<ClassElem, WeylElement> {
    let mut out: BTreeMap<ClassElem, WeylElement> = BTreeMap::new();
    for (m, c) in f.terms() {
        let deg = WeylElement::degree_of(gd, m);
        out.entry(deg).or_insert_with(|| WeylElement::zero(f.d)).add_term(m.clone(), c.clone());
    }
    out
}

/// The anti-involution `x^a d^b -> (-1)^|b| d^b x^a`.
pub fn tau(f: &WeylElement) -> WeylElement {
    let d = f.d;
    let mut out = WeylElement::zero(d);
    for (m, c) in f.terms() {
        let sign = if m.order() % 2 == 0 { c.clone() } else { -c.clone() };
        let mut left = vec![0u32; 2 * d];
        left[d..].copy_from_slice(&m.dx);
        let mut right = vec![0u32; 2 * d];
        right[..d].copy_from_slice(&m.x);
        for (e, k) in monomial_product(&left, &right) {
            out.add_term(WeylMonomial::from_flat(&e), &sign * Q::from_integer(k));
        }
    }
    out
}

/// Expands a polynomial in `theta_1..theta_d` into normal order.
pub fn theta_poly_to_weyl(w: &Poly) -> WeylElement {
    let d = w.nvars();
    let mut powers: HashMap<(usize, u32), WeylElement> = HashMap::new();
    let mut out = WeylElement::zero(d);
    for (e, c) in w.terms() {
        let mut t = WeylElement::constant(d, c.clone());
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                let p = powers.entry((i, k)).or_insert_with(|| WeylElement::theta(d, i).pow(k));
                t = &t * &*p;
            }
        }
        out = &out + &t;
    }
    out
}

/// `prod_{j<r} (theta_i - shift - j)` as a polynomial in `d` theta variables.
fn shifted_falling_theta(d: usize, i: usize, r: u32, shift: i64) -> Poly {
    let mut acc = Poly::one(d);
    for j in 0..r as i64 {
        acc = &acc * &(&Poly::var(d, i) - &Poly::constant(d, q(shift + j)));
    }
    acc
}

/// `f = sum_k m_k * w_k(theta)` with `m_k = x^(k+) d^(k-)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaFormElement {
    d: usize,
    entries: BTreeMap<Vec<i64>, Poly>,
}

impl ThetaFormElement {
    pub fn zero(d: usize) -> Self {
        ThetaFormElement { d, entries: BTreeMap::new() }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn insert(&mut self, k: Vec<i64>, w: Poly) {
        assert_eq!(w.nvars(), self.d);
        let slot = self.entries.entry(k.clone()).or_insert_with(|| Poly::zero(self.d));
        *slot = &*slot + &w;
        if slot.is_zero() {
            self.entries.remove(&k);
        }
    }

    pub fn entries(&self) -> &BTreeMap<Vec<i64>, Poly> {
        &self.entries
    }

    /// `x^(k+) d^(k-)`.
    pub fn monomial_for(d: usize, k: &[i64]) -> WeylElement {
        let m = WeylMonomial {
            x: k.iter().map(|&v| v.max(0) as u32).collect(),
            dx: k.iter().map(|&v| (-v).max(0) as u32).collect(),
        };
        let _ = d;
        WeylElement::monomial(m, Q::one())
    }
}

pub fn to_theta_form(f: &WeylElement) -> ThetaFormElement {
    let d = f.d;
    let mut out = ThetaFormElement::zero(d);
    for (m, c) in f.terms() {
        let mut w = Poly::constant(d, c.clone());
        let mut k = vec![0i64; d];
        for i in 0..d {
            let (a, b) = (m.x[i], m.dx[i]);
            if a >= b {
                // x^a d^b = x^(a-b) P_b(theta)
                k[i] = (a - b) as i64;
                w = &w * &shifted_falling_theta(d, i, b, 0);
            } else {
                // x^a d^b = d^(b-a) P_a(theta - (b - a))
                let s = (b - a) as i64;
                k[i] = -s;
                w = &w * &shifted_falling_theta(d, i, a, s);
            }
        }
        out.insert(k, w);
    }
    out
}

pub fn from_theta_form(t: &ThetaFormElement) -> WeylElement {
    let mut out = WeylElement::zero(t.d);
    for (k, w) in &t.entries {
        out = &out + &(&ThetaFormElement::monomial_for(t.d, k) * &theta_poly_to_weyl(w));
    }
    out
}

/// Laurent polynomial in which only the variables flagged in `inverted`
/// may carry negative exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    inverted: Vec<bool>,
    terms: BTreeMap<Vec<i64>, Q>,
}

impl LaurentPoly {
    pub fn zero(inverted: Vec<bool>) -> Self {
        LaurentPoly { inverted, terms: BTreeMap::new() }
    }

    pub fn monomial(inverted: Vec<bool>, exp: Vec<i64>, c: Q) -> Self {
        let mut p = LaurentPoly::zero(inverted);
        p.add_term(exp, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.inverted.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i64]) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, exp: Vec<i64>, c: Q) {
        assert_eq!(exp.len(), self.inverted.len());
        assert!(
            exp.iter().zip(&self.inverted).all(|(&e, &inv)| inv || e >= 0),
            "negative exponent on a variable that is not inverted"
        );
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = LaurentPoly::zero(self.inverted.clone());
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }
}

/// The action of `A` on `k[x, x_inv]`: `d_i` differentiates, `x_i` multiplies.
pub fn act(f: &WeylElement, g: &LaurentPoly) -> LaurentPoly {
    assert_eq!(f.d, g.nvars());
    let mut out = LaurentPoly::zero(g.inverted.clone());
    for (m, c) in f.terms() {
        for (e, v) in g.terms() {
            let mut coef = c * v;
            let mut exp = e.clone();
            for i in 0..f.d {
                coef *= Q::from_integer(falling(e[i], m.dx[i]));
                exp[i] += m.x[i] as i64 - m.dx[i] as i64;
            }
            if !coef.is_zero() {
                out.add_term(exp, coef);
            }
        }
    }
    out
}
