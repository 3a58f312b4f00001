//! Fans, smoothness, and the Cox ring data of a smooth toric variety:
//! the class group grading, the irrelevant ideal and Euler operators.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::{self, FinitelyGeneratedAbelianGroup, IntMatrix};
use crate::poly::q;
use crate::weyl::WeylElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("ray {ray} has {found} coordinates, expected {expected}")]
    RayArity { ray: usize, found: usize, expected: usize },
    #[error("ray {ray} is zero")]
    ZeroRay { ray: usize },
    #[error("ray {ray} is not primitive")]
    NotPrimitive { ray: usize },
    #[error("rays {first} and {second} coincide")]
    DuplicateRay { first: usize, second: usize },
    #[error("cone {cone} refers to ray {ray}, which does not exist")]
    ConeIndexOutOfRange { cone: usize, ray: usize },
    #[error("cone {cone} is not simplicial (its rays are linearly dependent)")]
    NonSimplicialCone { cone: usize },
    #[error("cone {cone} is not smooth (its rays do not extend to a lattice basis)")]
    NonSmoothCone { cone: usize },
    #[error("the rays do not span the ambient space")]
    RaysDoNotSpan,
    #[error("cone {0:?} is not a cone of the fan")]
    UnknownCone(Vec<usize>),
    #[error("cone {0:?} is not a maximal cone of the fan")]
    ConeNotMaximal(Vec<usize>),
    #[error("class group data does not fit in machine integers")]
    Overflow,
}

/// A fan given by its rays and maximal cones. Ray indices are 0-based.
///
/// Faces of the maximal cones are synthesized; every ray not covered by a
/// listed cone becomes a one-dimensional maximal cone of its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    n: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(n: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Fan, FanError> {
        for (i, r) in rays.iter().enumerate() {
            if r.len() != n {
                return Err(FanError::RayArity { ray: i, found: r.len(), expected: n });
            }
            if r.iter().all(|&v| v == 0) {
                return Err(FanError::ZeroRay { ray: i });
            }
            let g = r.iter().fold(0i64, |acc, &v| acc.gcd(&v));
            if g != 1 {
                return Err(FanError::NotPrimitive { ray: i });
            }
            if let Some(j) = rays[..i].iter().position(|s| s == r) {
                return Err(FanError::DuplicateRay { first: j, second: i });
            }
        }
        let mut normalized: Vec<Vec<usize>> = Vec::new();
        for (ci, c) in cones.iter().enumerate() {
            let set: BTreeSet<usize> = c.iter().copied().collect();
            if let Some(&bad) = set.iter().find(|&&r| r >= rays.len()) {
                return Err(FanError::ConeIndexOutOfRange { cone: ci, ray: bad });
            }
            normalized.push(set.into_iter().collect());
        }
        normalized.sort();
        normalized.dedup();
        // Keep only cones not contained in another listed cone.
        let mut max_cones: Vec<Vec<usize>> =
            normalized.iter().filter(|c| !normalized.iter().any(|o| o != *c && is_subset(c, o))).cloned().collect();
        for r in 0..rays.len() {
            if !max_cones.iter().any(|c| c.contains(&r)) {
                max_cones.push(vec![r]);
            }
        }
        max_cones.sort();
        Ok(Fan { n, rays, max_cones })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rays.
    pub fn d(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// All cones, as sorted ray-index sets, including the zero cone.
    pub fn cones(&self) -> Vec<Vec<usize>> {
        let mut all = BTreeSet::new();
        for c in &self.max_cones {
            // Faces of a simplicial cone are exactly the subsets of its rays.
            let k = c.len().min(20);
            for mask in 0u32..(1u32 << k) {
                let face: Vec<usize> = (0..k).filter(|b| mask & (1 << b) != 0).map(|b| c[b]).collect();
                all.insert(face);
            }
        }
        all.into_iter().collect()
    }

    pub fn contains_cone(&self, cone: &[usize]) -> bool {
        let set = sorted(cone);
        self.max_cones.iter().any(|c| is_subset(&set, c))
    }

    pub fn is_max_cone(&self, cone: &[usize]) -> bool {
        let set = sorted(cone);
        self.max_cones.contains(&set)
    }

    fn ray_matrix(&self, cone: &[usize]) -> IntMatrix {
        let rows: Vec<Vec<i64>> = cone.iter().map(|&i| self.rays[i].clone()).collect();
        IntMatrix::from_rows(&rows, self.n)
    }

    /// Whether the rays of `cone` extend to a basis of the lattice.
    pub fn cone_is_smooth(&self, cone: &[usize]) -> bool {
        let snf = lattice::smith_normal_form(&self.ray_matrix(cone));
        snf.invariant_factors.len() == cone.len() && snf.invariant_factors.iter().all(|f| f.is_one())
    }
}

fn sorted(cone: &[usize]) -> Vec<usize> {
    let mut v = cone.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// Accepts iff the rays span and every cone is smooth; the offending cone
/// (index into `max_cones()`) is reported otherwise.
pub fn validate_smooth_fan(fan: &Fan) -> Result<(), FanError> {
    let all: Vec<usize> = (0..fan.d()).collect();
    if fan.d() == 0 && fan.n() > 0 || fan.ray_matrix(&all).rank() != fan.n() {
        return Err(FanError::RaysDoNotSpan);
    }
    for (ci, cone) in fan.max_cones().iter().enumerate() {
        // For simplicial cones the gcd of the maximal minors is the product
        // of the invariant factors.
        let snf = lattice::smith_normal_form(&fan.ray_matrix(cone));
        if snf.invariant_factors.len() < cone.len() {
            return Err(FanError::NonSimplicialCone { cone: ci });
        }
        if !snf.invariant_factors.iter().all(|f| f.is_one()) {
            return Err(FanError::NonSmoothCone { cone: ci });
        }
    }
    Ok(())
}

/// Exponent vector of `x^sigma_hat`, the product of the variables whose
/// rays lie outside `cone`.
pub fn sigma_hat_monomial(fan: &Fan, cone: &[usize]) -> Result<Vec<u32>, FanError> {
    if !fan.contains_cone(cone) {
        return Err(FanError::UnknownCone(cone.to_vec()));
    }
    Ok((0..fan.d()).map(|i| u32::from(!cone.contains(&i))).collect())
}

/// Monomial ideal given by its minimal generators, sorted descending in lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    generators: Vec<Vec<u32>>,
}

impl MonomialIdeal {
    pub fn new(mut gens: Vec<Vec<u32>>) -> Self {
        gens.sort();
        gens.dedup();
        let minimal: Vec<Vec<u32>> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && h.iter().zip(g.iter()).all(|(a, b)| a <= b)))
            .cloned()
            .rev()
            .collect();
        MonomialIdeal { generators: minimal }
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .generators
            .iter()
            .map(|g| {
                let s = crate::poly::monomial_string(g, names);
                if s.is_empty() {
                    "1".to_string()
                } else {
                    s
                }
            })
            .collect();
        format!("({})", parts.join(", "))
    }
}

pub fn irrelevant_ideal(fan: &Fan) -> MonomialIdeal {
    let gens = fan.max_cones().iter().map(|c| sigma_hat_monomial(fan, c).expect("maximal cone")).collect();
    MonomialIdeal::new(gens)
}

/// An element of the class group in the coordinates of
/// [`GradingData`]: torsion coordinates first, then free coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassElem(pub Vec<i64>);

impl fmt::Display for ClassElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// The exact sequence `0 -> N^dual -> Z^d -> Cl(X) -> 0` in computable form.
#[derive(Clone, Debug)]
pub struct GradingData {
    fan: Fan,
    iota: IntMatrix,
    class_group: FinitelyGeneratedAbelianGroup,
    torsion: Vec<i64>,
    /// `deg x_i` for every ray.
    generator_degrees: Vec<ClassElem>,
    /// Functionals on `Z^d`; row `j` evaluates the `j`-th free coordinate.
    dual_basis: Vec<Vec<i64>>,
    e_bar: ClassElem,
}

pub fn grading_data(fan: &Fan) -> Result<GradingData, FanError> {
    validate_smooth_fan(fan)?;
    let d = fan.d();
    let iota = IntMatrix::from_rows(fan.rays(), fan.n());
    let class_group = lattice::cokernel(&iota);
    let torsion = lattice::to_i64_vec(&class_group.torsion).ok_or(FanError::Overflow)?;
    let mut generator_degrees = Vec::with_capacity(d);
    for i in 0..d {
        let mut e = vec![BigInt::zero(); d];
        e[i] = BigInt::one();
        let c = lattice::to_i64_vec(&class_group.project(&e)).ok_or(FanError::Overflow)?;
        generator_degrees.push(ClassElem(c));
    }
    let dual_basis = lattice::dual_lattice_basis(&class_group)
        .iter()
        .map(|u| lattice::to_i64_vec(u).ok_or(FanError::Overflow))
        .collect::<Result<Vec<_>, _>>()?;
    let mut gd = GradingData {
        fan: fan.clone(),
        iota,
        class_group,
        torsion,
        generator_degrees,
        dual_basis,
        e_bar: ClassElem(Vec::new()),
    };
    gd.e_bar = gd.degree(&vec![1; d]);
    Ok(gd)
}

impl GradingData {
    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn d(&self) -> usize {
        self.fan.d()
    }

    pub fn n(&self) -> usize {
        self.fan.n()
    }

    pub fn iota(&self) -> &IntMatrix {
        &self.iota
    }

    pub fn class_group(&self) -> &FinitelyGeneratedAbelianGroup {
        &self.class_group
    }

    pub fn free_rank(&self) -> usize {
        self.dual_basis.len()
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    /// Number of class coordinates (torsion plus free).
    pub fn class_arity(&self) -> usize {
        self.torsion.len() + self.dual_basis.len()
    }

    pub fn dual_basis(&self) -> &[Vec<i64>] {
        &self.dual_basis
    }

    pub fn generator_degrees(&self) -> &[ClassElem] {
        &self.generator_degrees
    }

    pub fn e_bar(&self) -> &ClassElem {
        &self.e_bar
    }

    pub fn zero_class(&self) -> ClassElem {
        ClassElem(vec![0; self.class_arity()])
    }

    /// Canonical form: torsion coordinates reduced into `[0, order)`.
    pub fn reduce_class(&self, c: &ClassElem) -> ClassElem {
        assert_eq!(c.0.len(), self.class_arity(), "class arity mismatch");
        ClassElem(
            c.0.iter()
                .enumerate()
                .map(|(i, &v)| if i < self.torsion.len() { v.rem_euclid(self.torsion[i]) } else { v })
                .collect(),
        )
    }

    pub fn add_classes(&self, a: &ClassElem, b: &ClassElem) -> ClassElem {
        self.reduce_class(&ClassElem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()))
    }

    pub fn sub_classes(&self, a: &ClassElem, b: &ClassElem) -> ClassElem {
        self.reduce_class(&ClassElem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect()))
    }

    pub fn neg_class(&self, a: &ClassElem) -> ClassElem {
        self.sub_classes(&self.zero_class(), a)
    }

    /// `deg x^a = sum a_i e_bar_i` for any integer vector `a`.
    pub fn degree(&self, a: &[i64]) -> ClassElem {
        assert_eq!(a.len(), self.d());
        let mut acc = vec![0i64; self.class_arity()];
        for (ai, di) in a.iter().zip(&self.generator_degrees) {
            for (slot, v) in acc.iter_mut().zip(&di.0) {
                *slot += ai * v;
            }
        }
        self.reduce_class(&ClassElem(acc))
    }

    pub fn degree_u32(&self, a: &[u32]) -> ClassElem {
        let v: Vec<i64> = a.iter().map(|&x| x as i64).collect();
        self.degree(&v)
    }

    /// `<u_j, c>` for the `j`-th dual basis functional.
    pub fn pairing(&self, j: usize, c: &ClassElem) -> i64 {
        c.0[self.torsion.len() + j]
    }

    /// Evaluates an arbitrary functional on `Z^d` at `a`.
    pub fn functional_value(u: &[i64], a: &[i64]) -> i64 {
        u.iter().zip(a).map(|(x, y)| x * y).sum()
    }

    /// A representative in `Z^d` of the class `c` (the section of the class group projection).
    pub fn lift(&self, c: &ClassElem) -> Vec<i64> {
        let coords: Vec<BigInt> = c.0.iter().map(|&v| BigInt::from(v)).collect();
        self.class_group.lift(&coords).iter().map(|v| v.to_i64().expect("lift fits in i64")).collect()
    }

    /// `iota(p)_i = <p, v_i>`.
    pub fn iota_of(&self, p: &[i64]) -> Vec<i64> {
        assert_eq!(p.len(), self.n());
        self.fan.rays().iter().map(|v| v.iter().zip(p).map(|(a, b)| a * b).sum()).collect()
    }

    /// Euler operator `theta_u = sum <u, e_bar_i> x_i d_i` of a functional on `Z^d`.
    pub fn euler_operator(&self, u: &[i64]) -> WeylElement {
        euler_operator(self, u)
    }

    /// Euler operator of the `j`-th dual basis element.
    pub fn theta_u(&self, j: usize) -> WeylElement {
        euler_operator(self, &self.dual_basis[j])
    }

    /// Render the coordinate convention used for class group elements.
    pub fn describe_basis(&self) -> String {
        let mut parts = Vec::new();
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        for u in &self.dual_basis {
            let r: Vec<String> = u.iter().map(|v| v.to_string()).collect();
            parts.push(format!("u=[{}]", r.join(", ")));
        }
        parts.join("; ")
    }
}

pub fn euler_operator(gd: &GradingData, u: &[i64]) -> WeylElement {
    assert_eq!(u.len(), gd.d());
    let mut out = WeylElement::zero(gd.d());
    for (i, &c) in u.iter().enumerate() {
        if c != 0 {
            out = &out + &WeylElement::theta(gd.d(), i).scale(&q(c));
        }
    }
    out
}

/// All `a` in `[0, cap]^d` with `deg x^a = target`, in lex order.
pub fn degree_component_basis(gd: &GradingData, target: &ClassElem, cap: u32) -> Vec<Vec<u32>> {
    let target = gd.reduce_class(target);
    let d = gd.d();
    let mut out = Vec::new();
    let mut a = vec![0u32; d];
    loop {
        if gd.degree_u32(&a) == target {
            out.push(a.clone());
        }
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if a[i] < cap {
                a[i] += 1;
                break;
            }
            a[i] = 0;
        }
    }
}

/// Absolute value helper for the sign normalization tests.
pub fn first_nonzero_positive(u: &[i64]) -> bool {
    u.iter().find(|v| **v != 0).is_none_or(|v| v.is_positive())
}
