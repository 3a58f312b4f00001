//! Buchberger's algorithm for submodules of free modules over a polynomial
//! ring or (acting from the left) over the Weyl algebra.
//!
//! Elements are stored as sparse vectors of `(Term, coefficient)` sorted in
//! ascending term order, so the leading term is the last entry.

pub mod ideal;

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::poly::{Poly, Q};
use crate::weyl::{monomial_product, WeylElement, WeylMonomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Variable 0 most significant.
    Lex,
    DegRevLex,
    /// Compare `weights . exp` first, ties broken by `then`.
    Weighted {
        weights: Vec<i64>,
        then: Box<MonomialOrder>,
    },
    /// Block order: degrevlex on the first `block` variables, then degrevlex
    /// on the rest. Eliminates the first block.
    Elimination {
        block: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleRanking {
    PositionOverTerm,
    TermOverPosition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    pub monomial: MonomialOrder,
    pub ranking: ModuleRanking,
}

impl TermOrder {
    pub fn new(monomial: MonomialOrder, ranking: ModuleRanking) -> Self {
        TermOrder { monomial, ranking }
    }

    pub fn degrevlex() -> Self {
        TermOrder::new(MonomialOrder::DegRevLex, ModuleRanking::PositionOverTerm)
    }

    /// Order used for left submodules of `A^r`: total derivative degree
    /// first, so that leading terms come from initial forms.
    pub fn weyl(d: usize, tiebreak: MonomialOrder) -> Self {
        let mut weights = vec![0; d];
        weights.extend(std::iter::repeat_n(1, d));
        TermOrder::new(MonomialOrder::Weighted { weights, then: Box::new(tiebreak) }, ModuleRanking::TermOverPosition)
    }

    pub fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        // A lower position ranks higher.
        let pos = b.pos.cmp(&a.pos);
        match self.ranking {
            ModuleRanking::PositionOverTerm => pos.then_with(|| cmp_monomials(&self.monomial, &a.exp, &b.exp)),
            ModuleRanking::TermOverPosition => cmp_monomials(&self.monomial, &a.exp, &b.exp).then(pos),
        }
    }
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&v| v as u64).sum();
    let db: u64 = b.iter().map(|&v| v as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

pub fn cmp_monomials(order: &MonomialOrder, a: &[u32], b: &[u32]) -> Ordering {
    match order {
        MonomialOrder::Lex => a.cmp(b),
        MonomialOrder::DegRevLex => degrevlex(a, b),
        MonomialOrder::Weighted { weights, then } => {
            let wa: i64 = weights.iter().zip(a).map(|(w, &e)| w * e as i64).sum();
            let wb: i64 = weights.iter().zip(b).map(|(w, &e)| w * e as i64).sum();
            wa.cmp(&wb).then_with(|| cmp_monomials(then, a, b))
        }
        MonomialOrder::Elimination { block } => {
            let k = (*block).min(a.len());
            degrevlex(&a[..k], &b[..k]).then_with(|| degrevlex(&a[k..], &b[k..]))
        }
    }
}

/// A monomial `exp` in position `pos` of a free module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub pos: usize,
    pub exp: Vec<u32>,
}

impl Term {
    pub fn divides(&self, other: &Term) -> bool {
        self.pos == other.pos && self.exp.iter().zip(&other.exp).all(|(a, b)| a <= b)
    }

    fn lcm(&self, other: &Term) -> Term {
        Term { pos: self.pos, exp: self.exp.iter().zip(&other.exp).map(|(a, b)| *a.max(b)).collect() }
    }

    fn quotient(&self, by: &Term) -> Vec<u32> {
        self.exp.iter().zip(&by.exp).map(|(a, b)| a - b).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algebra {
    Commutative,
    /// Exponent vectors are `x_1..x_d, d_1..d_d`.
    Weyl,
}

/// An element of a free module `R^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleElement<T> {
    pub components: Vec<T>,
}

impl<T> FreeModuleElement<T> {
    pub fn new(components: Vec<T>) -> Self {
        FreeModuleElement { components }
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }
}

impl FreeModuleElement<Poly> {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }
}

impl FreeModuleElement<WeylElement> {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }
}

pub(crate) type Sparse = Vec<(Term, Q)>;

struct Engine<'a> {
    algebra: Algebra,
    order: &'a TermOrder,
}

impl Engine<'_> {
    fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.order.cmp_terms(a, b)
    }

    /// Sorts ascending and merges duplicate terms.
    fn normalize(&self, mut v: Sparse) -> Sparse {
        v.sort_by(|a, b| self.cmp(&a.0, &b.0));
        let mut out: Sparse = Vec::with_capacity(v.len());
        for (t, c) in v {
            match out.last_mut() {
                Some((lt, lc)) if *lt == t => *lc += c,
                _ => out.push((t, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        out
    }

    /// `c * m * v`, where `m` multiplies from the left.
    fn mul_monomial(&self, m: &[u32], c: &Q, v: &Sparse) -> Sparse {
        match self.algebra {
            Algebra::Commutative => v
                .iter()
                .map(|(t, k)| {
                    let exp = t.exp.iter().zip(m).map(|(a, b)| a + b).collect();
                    (Term { pos: t.pos, exp }, k * c)
                })
                .collect(),
            Algebra::Weyl => {
                let mut out = Vec::new();
                for (t, k) in v {
                    let base = k * c;
                    for (exp, n) in monomial_product(m, &t.exp) {
                        out.push((Term { pos: t.pos, exp }, &base * Q::from_integer(n)));
                    }
                }
                self.normalize(out)
            }
        }
    }

    /// `a - b`, both ascending.
    fn sub(&self, a: Sparse, b: Sparse) -> Sparse {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut ia = a.into_iter().peekable();
        let mut ib = b.into_iter().peekable();
        loop {
            let ord = match (ia.peek(), ib.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => self.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Less => out.push(ia.next().unwrap()),
                Ordering::Greater => {
                    let (t, c) = ib.next().unwrap();
                    out.push((t, -c));
                }
                Ordering::Equal => {
                    let (t, c1) = ia.next().unwrap();
                    let (_, c2) = ib.next().unwrap();
                    let c = c1 - c2;
                    if !c.is_zero() {
                        out.push((t, c));
                    }
                }
            }
        }
        out
    }

    fn monic(&self, v: Sparse) -> Sparse {
        match v.last() {
            Some((_, c)) if !c.is_one() => {
                let inv = c.recip();
                v.into_iter().map(|(t, k)| (t, k * &inv)).collect()
            }
            _ => v,
        }
    }

    /// Full reduction of `h` by the (monic) elements of `basis`.
    fn reduce(&self, mut h: Sparse, basis: &[&Sparse]) -> Sparse {
        let mut rem: Sparse = Vec::new();
        while let Some((t, c)) = h.last() {
            match basis.iter().find(|g| g.last().unwrap().0.divides(t)) {
                Some(g) => {
                    let m = t.quotient(&g.last().unwrap().0);
                    let c = c.clone();
                    let prod = self.mul_monomial(&m, &c, g);
                    h = self.sub(h, prod);
                }
                None => rem.push(h.pop().unwrap()),
            }
        }
        rem.reverse();
        rem
    }

    fn spoly(&self, f: &Sparse, g: &Sparse) -> Sparse {
        let lf = &f.last().unwrap().0;
        let lg = &g.last().unwrap().0;
        let l = lf.lcm(lg);
        let one = Q::one();
        let a = self.mul_monomial(&l.quotient(lf), &one, f);
        let b = self.mul_monomial(&l.quotient(lg), &one, g);
        self.sub(a, b)
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Term,
}

fn coprime(a: &Term, b: &Term) -> bool {
    a.exp.iter().zip(&b.exp).all(|(x, y)| *x == 0 || *y == 0)
}

fn run_buchberger(algebra: Algebra, order: &TermOrder, rank: usize, gens: Vec<Sparse>) -> Vec<Sparse> {
    let eng = Engine { algebra, order };
    let product_ok = algebra == Algebra::Commutative && rank == 1;
    let mut polys: Vec<Sparse> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let add = |h: Sparse, polys: &mut Vec<Sparse>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>| {
        let k = polys.len();
        let lh = h.last().unwrap().0.clone();
        // Gebauer-Moller update.
        let mut cands: Vec<(usize, Term, bool)> = Vec::new();
        for (i, g) in polys.iter().enumerate() {
            if !active[i] {
                continue;
            }
            let lg = &g.last().unwrap().0;
            if lg.pos != lh.pos {
                continue;
            }
            cands.push((i, lg.lcm(&lh), product_ok && coprime(lg, &lh)));
        }
        let mut kept: Vec<(usize, Term, bool)> = Vec::new();
        for idx in 0..cands.len() {
            let (i, ref l, prod) = cands[idx];
            let dominated = cands[idx + 1..].iter().chain(kept.iter()).any(|(_, l2, _)| l2.divides(l));
            if prod || !dominated {
                kept.push((i, l.clone(), prod));
            }
        }
        pairs.retain(|p| {
            let li = polys[p.i].last().unwrap().0.lcm(&lh);
            let lj = polys[p.j].last().unwrap().0.lcm(&lh);
            !(lh.divides(&p.lcm) && li != p.lcm && lj != p.lcm)
        });
        for (i, l, prod) in kept {
            if !prod {
                pairs.push(Pair { i, j: k, lcm: l });
            }
        }
        for (i, g) in polys.iter().enumerate() {
            if active[i] && lh.divides(&g.last().unwrap().0) {
                active[i] = false;
            }
        }
        polys.push(h);
        active.push(true);
    };

    for g in gens {
        let refs: Vec<&Sparse> = polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let r = eng.reduce(g, &refs);
        if !r.is_empty() {
            add(eng.monic(r), &mut polys, &mut active, &mut pairs);
        }
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                eng.cmp(&pairs[a].lcm, &pairs[b].lcm).then((pairs[a].j, pairs[a].i).cmp(&(pairs[b].j, pairs[b].i)))
            })
            .unwrap();
        let p = pairs.swap_remove(best);
        let s = eng.spoly(&polys[p.i], &polys[p.j]);
        let refs: Vec<&Sparse> = polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let r = eng.reduce(s, &refs);
        if !r.is_empty() {
            add(eng.monic(r), &mut polys, &mut active, &mut pairs);
        }
    }

    // Minimize, interreduce, sort.
    let mut basis: Vec<Sparse> = polys.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    basis.sort_by(|a, b| eng.cmp(&a.last().unwrap().0, &b.last().unwrap().0));
    let mut minimal: Vec<Sparse> = Vec::new();
    for g in basis {
        let lg = &g.last().unwrap().0;
        if !minimal.iter().any(|m| m.last().unwrap().0.divides(lg)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let mut g = minimal[i].clone();
        let lead = g.pop().unwrap();
        let others: Vec<&Sparse> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p).collect();
        let mut tail = eng.reduce(g, &others);
        tail.push(lead);
        out.push(eng.monic(tail));
    }
    out
}

/// A reduced Gröbner basis: minimal, interreduced, monic, sorted by
/// ascending leading term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    algebra: Algebra,
    order: TermOrder,
    nvars: usize,
    rank: usize,
    elems: Vec<Sparse>,
}

fn poly_vec_to_sparse(v: &FreeModuleElement<Poly>) -> Sparse {
    let mut out = Vec::new();
    for (pos, p) in v.components.iter().enumerate() {
        for (e, c) in p.terms() {
            out.push((Term { pos, exp: e.clone() }, c.clone()));
        }
    }
    out
}

fn weyl_vec_to_sparse(v: &FreeModuleElement<WeylElement>) -> Sparse {
    let mut out = Vec::new();
    for (pos, p) in v.components.iter().enumerate() {
        for (m, c) in p.terms() {
            out.push((Term { pos, exp: m.flat() }, c.clone()));
        }
    }
    out
}

impl GroebnerBasis {
    fn engine(&self) -> Engine<'_> {
        Engine { algebra: self.algebra, order: &self.order }
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn leading_terms(&self) -> Vec<Term> {
        self.elems.iter().map(|g| g.last().unwrap().0.clone()).collect()
    }

    /// Whether some element has a constant leading monomial in every position
    /// (the whole free module).
    pub fn is_everything(&self) -> bool {
        (0..self.rank).all(|pos| {
            self.elems.iter().any(|g| {
                let t = &g.last().unwrap().0;
                t.pos == pos && t.exp.iter().all(|&e| e == 0)
            })
        })
    }

    fn to_poly_vec(&self, s: &Sparse) -> FreeModuleElement<Poly> {
        let mut comps = vec![Poly::zero(self.nvars); self.rank];
        for (t, c) in s {
            comps[t.pos].add_term(t.exp.clone(), c.clone());
        }
        FreeModuleElement::new(comps)
    }

    fn to_weyl_vec(&self, s: &Sparse) -> FreeModuleElement<WeylElement> {
        let d = self.nvars / 2;
        let mut comps = vec![WeylElement::zero(d); self.rank];
        for (t, c) in s {
            comps[t.pos].add_term(WeylMonomial::from_flat(&t.exp), c.clone());
        }
        FreeModuleElement::new(comps)
    }

    pub fn poly_elements(&self) -> Vec<FreeModuleElement<Poly>> {
        assert_eq!(self.algebra, Algebra::Commutative);
        self.elems.iter().map(|s| self.to_poly_vec(s)).collect()
    }

    /// Rank-one convenience: the basis as polynomials.
    pub fn polys(&self) -> Vec<Poly> {
        assert_eq!(self.rank, 1);
        self.poly_elements().into_iter().map(|mut v| v.components.pop().unwrap()).collect()
    }

    pub fn weyl_elements(&self) -> Vec<FreeModuleElement<WeylElement>> {
        assert_eq!(self.algebra, Algebra::Weyl);
        self.elems.iter().map(|s| self.to_weyl_vec(s)).collect()
    }

    pub fn normal_form_vec(&self, v: &FreeModuleElement<Poly>) -> FreeModuleElement<Poly> {
        let eng = self.engine();
        let refs: Vec<&Sparse> = self.elems.iter().collect();
        self.to_poly_vec(&eng.reduce(eng.normalize(poly_vec_to_sparse(v)), &refs))
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        assert_eq!(self.rank, 1);
        self.normal_form_vec(&FreeModuleElement::new(vec![p.clone()])).components.pop().unwrap()
    }

    pub fn normal_form_weyl(&self, v: &FreeModuleElement<WeylElement>) -> FreeModuleElement<WeylElement> {
        let eng = self.engine();
        let refs: Vec<&Sparse> = self.elems.iter().collect();
        self.to_weyl_vec(&eng.reduce(eng.normalize(weyl_vec_to_sparse(v)), &refs))
    }

    /// Checks the Buchberger criterion on every pair, without any shortcuts.
    pub fn is_groebner(&self) -> bool {
        let eng = self.engine();
        let refs: Vec<&Sparse> = self.elems.iter().collect();
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                if self.elems[i].last().unwrap().0.pos != self.elems[j].last().unwrap().0.pos {
                    continue;
                }
                let s = eng.spoly(&self.elems[i], &self.elems[j]);
                if !eng.reduce(s, &refs).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Gröbner basis of a submodule of `S^rank`, `S` a polynomial ring in `nvars` variables.
pub fn buchberger(nvars: usize, rank: usize, gens: &[FreeModuleElement<Poly>], order: &TermOrder) -> GroebnerBasis {
    let eng = Engine { algebra: Algebra::Commutative, order };
    let sparse = gens
        .iter()
        .map(|g| {
            assert_eq!(g.rank(), rank, "generator rank mismatch");
            assert!(g.components.iter().all(|c| c.nvars() == nvars), "generator arity mismatch");
            eng.normalize(poly_vec_to_sparse(g))
        })
        .collect();
    GroebnerBasis {
        algebra: Algebra::Commutative,
        order: order.clone(),
        nvars,
        rank,
        elems: run_buchberger(Algebra::Commutative, order, rank, sparse),
    }
}

/// Gröbner basis of an ideal.
pub fn groebner_ideal(nvars: usize, gens: &[Poly], order: &MonomialOrder) -> GroebnerBasis {
    let vecs: Vec<FreeModuleElement<Poly>> = gens.iter().map(|g| FreeModuleElement::new(vec![g.clone()])).collect();
    buchberger(nvars, 1, &vecs, &TermOrder::new(order.clone(), ModuleRanking::PositionOverTerm))
}

/// Gröbner basis of the left submodule of `A^rank` generated by `gens`,
/// with respect to [`TermOrder::weyl`].
pub fn weyl_buchberger(
    d: usize,
    rank: usize,
    gens: &[FreeModuleElement<WeylElement>],
    tiebreak: MonomialOrder,
) -> GroebnerBasis {
    let order = TermOrder::weyl(d, tiebreak);
    let eng = Engine { algebra: Algebra::Weyl, order: &order };
    let sparse = gens
        .iter()
        .map(|g| {
            assert_eq!(g.rank(), rank, "generator rank mismatch");
            eng.normalize(weyl_vec_to_sparse(g))
        })
        .collect();
    let elems = run_buchberger(Algebra::Weyl, &order, rank, sparse);
    GroebnerBasis { algebra: Algebra::Weyl, order, nvars: 2 * d, rank, elems }
}

/// Principal symbols of a Weyl basis computed with a weight-first order:
/// the terms of top derivative order, read in `k[x, xi]` (variables `x` then `xi`).
pub fn initial_forms(gb: &GroebnerBasis) -> Vec<FreeModuleElement<Poly>> {
    assert_eq!(gb.algebra, Algebra::Weyl);
    let d = gb.nvars / 2;
    gb.elems
        .iter()
        .map(|s| {
            let top: u32 = s.iter().map(|(t, _)| t.exp[d..].iter().sum::<u32>()).max().unwrap_or(0);
            let mut comps = vec![Poly::zero(2 * d); gb.rank];
            for (t, c) in s {
                if t.exp[d..].iter().sum::<u32>() == top {
                    comps[t.pos].add_term(t.exp.clone(), c.clone());
                }
            }
            FreeModuleElement::new(comps)
        })
        .collect()
}
