//! Ideal operations in a commutative polynomial ring built on reduced
//! Gröbner bases: saturation, intersection, radical membership, Krull
//! dimension and annihilators of finitely presented modules.

use std::fmt;

use crate::poly::Poly;

use super::{buchberger, groebner_ideal, FreeModuleElement, GroebnerBasis, ModuleRanking, MonomialOrder, TermOrder};

/// An ideal, stored as its reduced degrevlex Gröbner basis. Two ideals are
/// equal exactly when these bases coincide.
#[derive(Clone, Debug)]
pub struct Ideal {
    nvars: usize,
    gb: GroebnerBasis,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.generators() == other.generators()
    }
}

impl Eq for Ideal {}

impl Ideal {
    pub fn new(nvars: usize, gens: &[Poly]) -> Ideal {
        let gens: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        Ideal { nvars, gb: groebner_ideal(nvars, &gens, &MonomialOrder::DegRevLex) }
    }

    pub fn zero(nvars: usize) -> Ideal {
        Ideal::new(nvars, &[])
    }

    pub fn unit(nvars: usize) -> Ideal {
        Ideal::new(nvars, &[Poly::one(nvars)])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The reduced Gröbner basis, ascending by leading monomial.
    pub fn generators(&self) -> Vec<Poly> {
        self.gb.polys()
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.gb.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        self.gb.normal_form(f)
    }

    pub fn is_unit(&self) -> bool {
        self.gb.is_everything()
    }

    pub fn is_zero(&self) -> bool {
        self.gb.is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.generators();
        gens.extend(other.generators());
        Ideal::new(self.nvars, &gens)
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.generators().iter().map(|g| g.render(names)).collect();
        if parts.is_empty() {
            return "(0)".into();
        }
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&crate::poly::var_names("x", self.nvars)))
    }
}

/// Inserts `k` new variables in front of the existing ones.
pub fn prepend_vars(p: &Poly, k: usize) -> Poly {
    Poly::from_terms(
        p.nvars() + k,
        p.terms().map(|(e, c)| {
            let mut e2 = vec![0; k];
            e2.extend_from_slice(e);
            (e2, c.clone())
        }),
    )
}

/// Eliminates the first `k` variables of an ideal given by generators.
fn eliminate_front(nvars_total: usize, k: usize, gens: &[Poly]) -> Ideal {
    let gb = groebner_ideal(nvars_total, gens, &MonomialOrder::Elimination { block: k });
    let kept: Vec<Poly> = gb
        .polys()
        .into_iter()
        .filter(|g| g.terms().all(|(e, _)| e[..k].iter().all(|&v| v == 0)))
        .map(|g| Poly::from_terms(nvars_total - k, g.terms().map(|(e, c)| (e[k..].to_vec(), c.clone()))))
        .collect();
    Ideal::new(nvars_total - k, &kept)
}

/// `(I : f^infinity)`.
pub fn saturate_by(i: &Ideal, f: &Poly) -> Ideal {
    let n = i.nvars;
    if f.is_zero() {
        return Ideal::unit(n);
    }
    if i.is_unit() || f.is_constant() {
        return i.clone();
    }
    let mut gens: Vec<Poly> = i.generators().iter().map(|g| prepend_vars(g, 1)).collect();
    let t = Poly::var(n + 1, 0);
    gens.push(&Poly::one(n + 1) - &(&t * &prepend_vars(f, 1)));
    eliminate_front(n + 1, 1, &gens)
}

/// `(I : J^infinity)` for `J` generated by `j_gens`.
pub fn saturate(i: &Ideal, j_gens: &[Poly]) -> Ideal {
    let mut acc: Option<Ideal> = None;
    for g in j_gens.iter().filter(|g| !g.is_zero()) {
        let s = saturate_by(i, g);
        acc = Some(match acc {
            None => s,
            Some(a) => intersect(&a, &s),
        });
        if acc.as_ref().is_some_and(|a| a == i) {
            break;
        }
    }
    acc.unwrap_or_else(|| Ideal::unit(i.nvars))
}

pub fn intersect(i: &Ideal, j: &Ideal) -> Ideal {
    assert_eq!(i.nvars, j.nvars);
    let n = i.nvars;
    if i.is_unit() {
        return j.clone();
    }
    if j.is_unit() {
        return i.clone();
    }
    let t = Poly::var(n + 1, 0);
    let one_minus_t = &Poly::one(n + 1) - &t;
    let mut gens: Vec<Poly> = i.generators().iter().map(|g| &t * &prepend_vars(g, 1)).collect();
    gens.extend(j.generators().iter().map(|g| &one_minus_t * &prepend_vars(g, 1)));
    eliminate_front(n + 1, 1, &gens)
}

/// `(I : f)`.
pub fn colon(i: &Ideal, f: &Poly) -> Ideal {
    if f.is_zero() {
        return Ideal::unit(i.nvars);
    }
    let both = intersect(i, &Ideal::new(i.nvars, std::slice::from_ref(f)));
    let quotients: Vec<Poly> = both
        .generators()
        .iter()
        .map(|g| {
            let (qt, r) = g.div_rem(f);
            debug_assert!(r.is_zero());
            qt
        })
        .collect();
    Ideal::new(i.nvars, &quotients)
}

/// Whether `f` lies in the radical of `I`.
pub fn radical_membership(f: &Poly, i: &Ideal) -> bool {
    let n = i.nvars;
    let mut gens: Vec<Poly> = i.generators().iter().map(|g| prepend_vars(g, 1)).collect();
    gens.push(&Poly::one(n + 1) - &(&Poly::var(n + 1, 0) * &prepend_vars(f, 1)));
    groebner_ideal(n + 1, &gens, &MonomialOrder::DegRevLex).is_everything()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    /// The unit ideal: the zero set is empty.
    Empty,
    Dim(usize),
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Empty => f.write_str("empty"),
            Dimension::Dim(k) => write!(f, "{k}"),
        }
    }
}

/// Krull dimension of `S / I`: the largest set of variables independent
/// modulo the leading monomial ideal.
pub fn krull_dimension(i: &Ideal) -> Dimension {
    if i.is_unit() {
        return Dimension::Empty;
    }
    let n = i.nvars;
    let supports: Vec<u64> =
        i.gb.leading_terms()
            .iter()
            .map(|t| t.exp.iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |m, (v, _)| m | (1 << v)))
            .collect();
    assert!(n < 64, "too many variables for dimension search");
    let mut best = 0;
    for set in 0u64..(1u64 << n) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|s| s & !set != 0) {
            best = size;
        }
    }
    Dimension::Dim(best)
}

/// `Ann(S^rank / M)` for the submodule `M` generated by `gens`.
pub fn module_annihilator(nvars: usize, rank: usize, gens: &[FreeModuleElement<Poly>]) -> Ideal {
    let order = TermOrder::new(MonomialOrder::DegRevLex, ModuleRanking::PositionOverTerm);
    let mut acc: Option<Ideal> = None;
    for i in 0..rank {
        // (M : e_i) is the last-position part of the module generated by
        // (m, 0) and (e_i, 1).
        let mut ext: Vec<FreeModuleElement<Poly>> = gens
            .iter()
            .map(|g| {
                let mut c = g.components.clone();
                c.push(Poly::zero(nvars));
                FreeModuleElement::new(c)
            })
            .collect();
        let mut unit = vec![Poly::zero(nvars); rank + 1];
        unit[i] = Poly::one(nvars);
        unit[rank] = Poly::one(nvars);
        ext.push(FreeModuleElement::new(unit));
        let gb = buchberger(nvars, rank + 1, &ext, &order);
        let colon: Vec<Poly> = gb
            .poly_elements()
            .into_iter()
            .filter(|v| v.components[..rank].iter().all(|c| c.is_zero()))
            .map(|mut v| v.components.pop().unwrap())
            .collect();
        let c = Ideal::new(nvars, &colon);
        acc = Some(match acc {
            None => c,
            Some(a) => intersect(&a, &c),
        });
    }
    acc.unwrap_or_else(|| Ideal::unit(nvars))
}
