//! Graded `A`-modules: the modules `D_L(b)` and `D_R(a)`, the theta
//! condition, the left/right swap, and the local eigenspace data `h_p`,
//! `rho`, `I(p)` attached to a cone.

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::fan_cox::{ClassElem, GradingData};
use crate::groebner::ideal::Ideal;
use crate::groebner::{weyl_buchberger, FreeModuleElement, GroebnerBasis, MonomialOrder};
use crate::poly::{q, Poly, Q};
use crate::weyl::{act, tau, theta_poly_to_weyl, LaurentPoly, WeylElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DmodError {
    #[error("element is not homogeneous")]
    InhomogeneousInput,
    #[error("h_p = {h_p} does not divide g = {g}")]
    NotInJp { h_p: String, g: String },
    #[error("box radius {radius} is too small, need at least {needed}")]
    BoxTooSmall { radius: i64, needed: i64 },
    #[error("cone {0:?} is not a cone of the fan")]
    UnknownCone(Vec<usize>),
    #[error("expected a vector of length {expected}, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("enumerated set is not a union of coordinate hyperplane slices")]
    NotHyperplaneUnion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// `A^r` modulo a submodule, with generator `e_i` placed in degree `degrees[i]`.
/// For right modules the relations generate a right submodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPresentation {
    pub side: Side,
    /// Number of Weyl variables.
    pub d: usize,
    pub degrees: Vec<ClassElem>,
    pub relations: Vec<FreeModuleElement<WeylElement>>,
}

/// Flips the sign of a relation so that its first nonzero entry has a
/// positive leading coefficient.
pub fn sign_normalize(r: &FreeModuleElement<WeylElement>) -> FreeModuleElement<WeylElement> {
    let negative =
        r.components.iter().find(|c| !c.is_zero()).and_then(|c| c.leading()).is_some_and(|(_, c)| c.is_negative());
    if negative {
        FreeModuleElement::new(r.components.iter().map(|c| -c).collect())
    } else {
        r.clone()
    }
}

impl GradedPresentation {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// The same presentation with every relation sign-normalized.
    pub fn canonical(&self) -> GradedPresentation {
        GradedPresentation { relations: self.relations.iter().map(sign_normalize).collect(), ..self.clone() }
    }

    /// Degree of a relation in the shifted grading, `None` if inhomogeneous.
    pub fn relation_degree(&self, gd: &GradingData, r: &FreeModuleElement<WeylElement>) -> Option<ClassElem> {
        let mut deg: Option<ClassElem> = None;
        for (k, f) in r.components.iter().enumerate() {
            for (m, _) in f.terms() {
                let t = gd.add_classes(&WeylElement::degree_of(gd, m), &self.degrees[k]);
                match &deg {
                    None => deg = Some(t),
                    Some(d0) if *d0 != t => return None,
                    _ => {}
                }
            }
        }
        Some(deg.unwrap_or_else(|| gd.zero_class()))
    }

    pub fn is_homogeneous(&self, gd: &GradingData) -> bool {
        self.relations.iter().all(|r| self.relation_degree(gd, r).is_some())
    }

    /// Left relations whose left span corresponds to the relation submodule
    /// (for right modules, the image under `tau`).
    pub fn left_relations(&self) -> Vec<FreeModuleElement<WeylElement>> {
        match self.side {
            Side::Left => self.relations.clone(),
            Side::Right => {
                self.relations.iter().map(|r| FreeModuleElement::new(r.components.iter().map(tau).collect())).collect()
            }
        }
    }

    /// Gröbner basis of [`Self::left_relations`] for the order filtration.
    pub fn relation_basis(&self) -> GroebnerBasis {
        weyl_buchberger(self.d, self.rank(), &self.left_relations(), MonomialOrder::DegRevLex)
    }
}

fn pairing_poly(gd: &GradingData, j: usize, shift: i64) -> WeylElement {
    &gd.theta_u(j) + &WeylElement::constant(gd.d(), q(shift))
}

/// `D_L(b) = A(b) / A (theta_u + <u, b>)`; its generator sits in degree `-b`.
pub fn d_module_left(gd: &GradingData, b: &ClassElem) -> GradedPresentation {
    let b = gd.reduce_class(b);
    let relations =
        (0..gd.free_rank()).map(|j| FreeModuleElement::new(vec![pairing_poly(gd, j, gd.pairing(j, &b))])).collect();
    GradedPresentation { side: Side::Left, d: gd.d(), degrees: vec![gd.neg_class(&b)], relations }
}

/// `D_R(a) = A(a) / (theta_u - <u, a>) A`; its generator sits in degree `-a`.
pub fn d_module_right(gd: &GradingData, a: &ClassElem) -> GradedPresentation {
    let a = gd.reduce_class(a);
    let relations =
        (0..gd.free_rank()).map(|j| FreeModuleElement::new(vec![pairing_poly(gd, j, -gd.pairing(j, &a))])).collect();
    GradedPresentation { side: Side::Right, d: gd.d(), degrees: vec![gd.neg_class(&a)], relations }
}

/// `A / A(d_1, ..., d_d)`, the module of the structure sheaf, in degree 0.
pub fn structure_sheaf_module(gd: &GradingData) -> GradedPresentation {
    let d = gd.d();
    GradedPresentation {
        side: Side::Left,
        d,
        degrees: vec![gd.zero_class()],
        relations: (0..d).map(|i| FreeModuleElement::new(vec![WeylElement::dx(d, i)])).collect(),
    }
}

/// `A / A(x_1, ..., x_d)`. Its generator must sit in degree `-e_bar` for the
/// theta condition to hold.
pub fn torsion_module(gd: &GradingData) -> GradedPresentation {
    let d = gd.d();
    GradedPresentation {
        side: Side::Left,
        d,
        degrees: vec![gd.neg_class(gd.e_bar())],
        relations: (0..d).map(|i| FreeModuleElement::new(vec![WeylElement::x(d, i)])).collect(),
    }
}

/// Outcome of the theta condition test. `failure` holds the first failing
/// `(generator, dual basis element)` pair, both 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaVerdict {
    pub holds: bool,
    pub failure: Option<(usize, usize)>,
}

/// For left modules: `(theta_u - <u, deg e_i>) e_i` lies in the relation
/// module for all `i` and `u`. For right modules the mirrored condition
/// `e_i (theta_u + <u, deg e_i>)`, tested through `tau`.
pub fn check_theta_condition(gd: &GradingData, f: &GradedPresentation) -> ThetaVerdict {
    let gb = f.relation_basis();
    check_theta_condition_with(gd, f, &gb)
}

pub fn check_theta_condition_with(gd: &GradingData, f: &GradedPresentation, gb: &GroebnerBasis) -> ThetaVerdict {
    let d = gd.d();
    for (i, deg) in f.degrees.iter().enumerate() {
        for j in 0..gd.free_rank() {
            let s = gd.pairing(j, deg);
            let op = match f.side {
                Side::Left => pairing_poly(gd, j, -s),
                Side::Right => tau(&pairing_poly(gd, j, s)),
            };
            let mut comps = vec![WeylElement::zero(d); f.rank()];
            comps[i] = op;
            if !gb.normal_form_weyl(&FreeModuleElement::new(comps)).is_zero() {
                return ThetaVerdict { holds: false, failure: Some((i, j)) };
            }
        }
    }
    ThetaVerdict { holds: true, failure: None }
}

/// `(theta_u + <u, b>) f == f (theta_u + <u, b + b'>)` for `f` homogeneous of degree `b'`.
pub fn bimodule_identity_check(
    gd: &GradingData,
    f: &WeylElement,
    j: usize,
    b: &ClassElem,
    b_prime: &ClassElem,
) -> Result<bool, DmodError> {
    f.homogeneous_degree(gd).ok_or(DmodError::InhomogeneousInput)?;
    let lhs = &pairing_poly(gd, j, gd.pairing(j, b)) * f;
    let rhs = f * &pairing_poly(gd, j, gd.pairing(j, &gd.add_classes(b, b_prime)));
    Ok(lhs == rhs)
}

/// `f (theta_u + <u, b>) == (theta_u - <u, a>) f` for `f` homogeneous of degree `a + b`.
pub fn d_equals_d_prime_check(
    gd: &GradingData,
    f: &WeylElement,
    j: usize,
    a: &ClassElem,
    b: &ClassElem,
) -> Result<bool, DmodError> {
    f.homogeneous_degree(gd).ok_or(DmodError::InhomogeneousInput)?;
    let lhs = f * &pairing_poly(gd, j, gd.pairing(j, b));
    let rhs = &pairing_poly(gd, j, -gd.pairing(j, a)) * f;
    Ok(lhs == rhs)
}

/// `F -> F^tau(-e_bar)` for left modules and `G -> G^tau(e_bar)` for right
/// modules. Generator degrees move by `+e_bar` and `-e_bar` respectively.
pub fn left_right_swap(gd: &GradingData, f: &GradedPresentation) -> GradedPresentation {
    let (side, degrees) = match f.side {
        Side::Left => (Side::Right, f.degrees.iter().map(|c| gd.add_classes(c, gd.e_bar())).collect()),
        Side::Right => (Side::Left, f.degrees.iter().map(|c| gd.sub_classes(c, gd.e_bar())).collect()),
    };
    let relations = f
        .relations
        .iter()
        .map(|r| sign_normalize(&FreeModuleElement::new(r.components.iter().map(tau).collect())))
        .collect();
    GradedPresentation { side, d: f.d, degrees, relations }
}

fn check_cone(gd: &GradingData, cone: &[usize]) -> Result<(), DmodError> {
    if gd.fan().contains_cone(cone) {
        Ok(())
    } else {
        Err(DmodError::UnknownCone(cone.to_vec()))
    }
}

fn check_arity(expected: usize, v: &[i64]) -> Result<(), DmodError> {
    if v.len() == expected {
        Ok(())
    } else {
        Err(DmodError::Arity { expected, found: v.len() })
    }
}

/// The linear factors `(i, m)` of `h_p`: `v_i` in the cone and `0 <= m < -iota(p)_i`.
pub fn h_p_factors(gd: &GradingData, cone: &[usize], p: &[i64]) -> Result<Vec<(usize, i64)>, DmodError> {
    check_cone(gd, cone)?;
    check_arity(gd.n(), p)?;
    let ip = gd.iota_of(p);
    let mut cone = cone.to_vec();
    cone.sort_unstable();
    Ok(cone.iter().flat_map(|&i| (0..(-ip[i]).max(0)).map(move |m| (i, m))).collect())
}

/// Factors with the inclusive range `0 <= m <= -iota(p)_i`, kept for comparison.
pub fn h_p_factors_inclusive(gd: &GradingData, cone: &[usize], p: &[i64]) -> Result<Vec<(usize, i64)>, DmodError> {
    check_cone(gd, cone)?;
    check_arity(gd.n(), p)?;
    let ip = gd.iota_of(p);
    let mut cone = cone.to_vec();
    cone.sort_unstable();
    Ok(cone.iter().flat_map(|&i| (0..=(-ip[i])).map(move |m| (i, m))).collect())
}

pub fn product_of_factors(d: usize, factors: &[(usize, i64)]) -> Poly {
    let mut acc = Poly::one(d);
    for &(i, m) in factors {
        acc = &acc * &(&Poly::var(d, i) - &Poly::constant(d, q(m)));
    }
    acc
}

/// `th1*(th1 - 1)`; `1` for the empty product.
pub fn render_factors(factors: &[(usize, i64)]) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    let parts: Vec<String> = factors
        .iter()
        .map(|&(i, m)| match m {
            0 => format!("th{}", i + 1),
            m if m > 0 => format!("(th{} - {m})", i + 1),
            m => format!("(th{} + {})", i + 1, -m),
        })
        .collect();
    if parts.len() == 1 {
        parts[0].trim_start_matches('(').trim_end_matches(')').to_string()
    } else {
        parts.join("*")
    }
}

/// Generator of `J(p)`, the polynomials `g(theta)` with `x^iota(p) g` regular on `U_sigma`.
pub fn h_p(gd: &GradingData, cone: &[usize], p: &[i64]) -> Result<Poly, DmodError> {
    Ok(product_of_factors(gd.d(), &h_p_factors(gd, cone, p)?))
}

/// `rho(theta_i) = sum_l v_i[l] vartheta_l`.
pub fn rho(gd: &GradingData, w: &Poly) -> Poly {
    let n = gd.n();
    let images: Vec<Poly> = gd
        .fan()
        .rays()
        .iter()
        .map(|v| {
            let mut acc = Poly::zero(n);
            for (l, &c) in v.iter().enumerate() {
                acc = &acc + &Poly::var(n, l).scale(&q(c));
            }
            acc
        })
        .collect();
    w.compose(&images)
}

/// `alpha_b(theta_i) = theta_i - b_i`.
pub fn alpha_b(b: &[i64], w: &Poly) -> Poly {
    let d = w.nvars();
    let images: Vec<Poly> = (0..d).map(|i| &Poly::var(d, i) - &Poly::constant(d, q(b[i]))).collect();
    w.compose(&images)
}

pub fn rho_b(gd: &GradingData, b: &[i64], w: &Poly) -> Poly {
    rho(gd, &alpha_b(b, w))
}

/// `x^iota(p) g(theta) -> y^p rho(g)`, defined when `h_p` divides `g`.
pub fn local_op_image(gd: &GradingData, cone: &[usize], p: &[i64], g: &Poly) -> Result<(Vec<i64>, Poly), DmodError> {
    let h = h_p(gd, cone, p)?;
    if g.is_zero() || !h.divides(g) {
        let names = crate::poly::var_names("th", gd.d());
        return Err(DmodError::NotInJp { h_p: h.render(&names), g: g.render(&names) });
    }
    Ok((p.to_vec(), rho(gd, g)))
}

/// Generator `rho(h_p)` of `I(p)`.
pub fn i_p_ideal(gd: &GradingData, cone: &[usize], p: &[i64]) -> Result<Poly, DmodError> {
    Ok(rho(gd, &h_p(gd, cone, p)?))
}

fn in_dual_cone(gd: &GradingData, cone: &[usize], q: &[i64]) -> bool {
    let iq = gd.iota_of(q);
    cone.iter().all(|&i| iq[i] >= 0)
}

fn box_points(dim: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![-radius; dim];
    loop {
        out.push(cur.clone());
        let mut k = 0;
        loop {
            if k == dim {
                return out;
            }
            if cur[k] < radius {
                cur[k] += 1;
                break;
            }
            cur[k] = -radius;
            k += 1;
        }
    }
}

/// `Y(p) = { q in sigma^dual : q + p not in sigma^dual }` within `[-radius, radius]^n`.
pub fn y_p_points(gd: &GradingData, cone: &[usize], p: &[i64], radius: i64) -> Result<Vec<Vec<i64>>, DmodError> {
    check_cone(gd, cone)?;
    check_arity(gd.n(), p)?;
    Ok(box_points(gd.n(), radius)
        .into_iter()
        .filter(|q| {
            let pq: Vec<i64> = q.iter().zip(p).map(|(a, b)| a + b).collect();
            in_dual_cone(gd, cone, q) && !in_dual_cone(gd, cone, &pq)
        })
        .collect())
}

/// Whether, on `sigma^dual` within the box, `w` vanishes exactly on `Y(p)`.
pub fn vanishes_exactly_on_y_p(
    gd: &GradingData,
    cone: &[usize],
    p: &[i64],
    w: &Poly,
    radius: i64,
) -> Result<bool, DmodError> {
    let y = y_p_points(gd, cone, p, radius)?;
    for q in box_points(gd.n(), radius) {
        if !in_dual_cone(gd, cone, &q) {
            continue;
        }
        if w.eval_int(&q).is_zero() != y.contains(&q) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Z(p) = { a : a_i >= 0 for v_i in sigma, iota(p)_j + a_j < 0 for some v_j in sigma }`.
pub fn in_z_p(gd: &GradingData, cone: &[usize], p: &[i64], a: &[i64]) -> bool {
    let ip = gd.iota_of(p);
    cone.iter().all(|&i| a[i] >= 0) && cone.iter().any(|&j| ip[j] + a[j] < 0)
}

/// Brute-force generator of the polynomials vanishing on `Z(p)`: enumerates
/// `Z(p)` in the box and returns the product of the coordinate hyperplanes
/// `theta_i = m` whose admissible slab lies inside `Z(p)`, after checking
/// that they cover it.
pub fn j_p_oracle(gd: &GradingData, cone: &[usize], p: &[i64], radius: i64) -> Result<Poly, DmodError> {
    check_cone(gd, cone)?;
    check_arity(gd.n(), p)?;
    let ip = gd.iota_of(p);
    let needed = ip.iter().map(|v| v.abs()).max().unwrap_or(0).max(1) + 1;
    if radius < needed {
        return Err(DmodError::BoxTooSmall { radius, needed });
    }
    let d = gd.d();
    let admissible: Vec<Vec<i64>> =
        box_points(d, radius).into_iter().filter(|a| cone.iter().all(|&i| a[i] >= 0)).collect();
    let z: Vec<&Vec<i64>> = admissible.iter().filter(|a| in_z_p(gd, cone, p, a)).collect();
    let mut factors = Vec::new();
    for i in 0..d {
        for m in -radius..=radius {
            let mut slab = admissible.iter().filter(|a| a[i] == m).peekable();
            if slab.peek().is_none() {
                continue;
            }
            if slab.all(|a| in_z_p(gd, cone, p, a)) {
                factors.push((i, m));
            }
        }
    }
    if !z.iter().all(|a| factors.iter().any(|&(i, m)| a[i] == m)) {
        return Err(DmodError::NotHyperplaneUnion);
    }
    Ok(product_of_factors(d, &factors))
}

/// `x^iota(p) g(theta)` keeps `S_{x^sigma_hat}` regular on the box:
/// `g(a) = 0` whenever `x^(iota(p) + a)` has a negative exponent on `sigma`.
pub fn regular_by_action(gd: &GradingData, cone: &[usize], p: &[i64], g: &Poly, radius: i64) -> bool {
    let d = gd.d();
    let ip = gd.iota_of(p);
    let op = theta_poly_to_weyl(g);
    let mask: Vec<bool> = (0..d).map(|i| !cone.contains(&i)).collect();
    for a in box_points(d, radius) {
        if cone.iter().any(|&i| a[i] < 0) {
            continue;
        }
        let image = act(&op, &LaurentPoly::monomial(mask.clone(), a.clone(), q(1)));
        for (e, c) in image.terms() {
            if !c.is_zero() && cone.iter().any(|&i| e[i] + ip[i] < 0) {
                return false;
            }
        }
    }
    true
}

/// `(y^p rho(g)) . y^q == g(iota(q)) y^(p+q)`, with `rho(g)` acting as a
/// differential operator on `k[y, y_inv]`.
pub fn action_identity_y(gd: &GradingData, p: &[i64], g: &Poly, q_pt: &[i64]) -> bool {
    let n = gd.n();
    let op = theta_poly_to_weyl(&rho(gd, g));
    let image = act(&op, &LaurentPoly::monomial(vec![true; n], q_pt.to_vec(), q(1)));
    let mut lhs = LaurentPoly::zero(vec![true; n]);
    for (e, c) in image.terms() {
        lhs.add_term(e.iter().zip(p).map(|(a, b)| a + b).collect(), c.clone());
    }
    let value = g.eval_int(&gd.iota_of(q_pt));
    let rhs = LaurentPoly::monomial(vec![true; n], q_pt.iter().zip(p).map(|(a, b)| a + b).collect(), value);
    lhs == rhs
}

/// The same identity read on the Cox side: `x^iota(p) g(theta) . x^iota(q) == g(iota(q)) x^iota(p+q)`.
pub fn action_identity_x(gd: &GradingData, p: &[i64], g: &Poly, q_pt: &[i64]) -> bool {
    let d = gd.d();
    let (ip, iq) = (gd.iota_of(p), gd.iota_of(q_pt));
    let image = act(&theta_poly_to_weyl(g), &LaurentPoly::monomial(vec![true; d], iq.clone(), q(1)));
    let mut lhs = LaurentPoly::zero(vec![true; d]);
    for (e, c) in image.terms() {
        lhs.add_term(e.iter().zip(&ip).map(|(a, b)| a + b).collect(), c.clone());
    }
    let rhs = LaurentPoly::monomial(vec![true; d], iq.iter().zip(&ip).map(|(a, b)| a + b).collect(), g.eval_int(&iq));
    lhs == rhs
}

/// `L_0 = (theta_u + <u, b>)` in `W = k[theta]`.
pub fn l0_generators(gd: &GradingData, b: &ClassElem) -> Vec<Poly> {
    let d = gd.d();
    (0..gd.free_rank())
        .map(|j| {
            let mut acc = Poly::constant(d, q(gd.pairing(j, b)));
            for (i, &c) in gd.dual_basis()[j].iter().enumerate() {
                acc = &acc + &Poly::var(d, i).scale(&q(c));
            }
            acc
        })
        .collect()
}

pub fn l0_ideal(gd: &GradingData, b: &ClassElem) -> Ideal {
    Ideal::new(gd.d(), &l0_generators(gd, b))
}

/// Generators of `K(a) = L_0 + (prod_{a_i <= 0} (theta_i + a_i))`.
pub fn k_component(gd: &GradingData, a: &[i64], b: &ClassElem) -> Result<Vec<Poly>, DmodError> {
    check_arity(gd.d(), a)?;
    let d = gd.d();
    let mut gens = l0_generators(gd, b);
    let mut prod = Poly::one(d);
    for (i, &ai) in a.iter().enumerate() {
        if ai <= 0 {
            prod = &prod * &(&Poly::var(d, i) + &Poly::constant(d, q(ai)));
        }
    }
    gens.push(prod);
    Ok(gens)
}

/// `x^e x^(a+) d^(a-) g(theta)` with `e = (1, ..., 1)`.
pub fn nonzerodivisor_element(gd: &GradingData, a: &[i64], g: &Poly) -> WeylElement {
    let d = gd.d();
    let theta_form = crate::weyl::ThetaFormElement::monomial_for(d, a);
    let xe = WeylElement::x_pow(d, &vec![1; d]);
    &(&xe * &theta_form) * &theta_poly_to_weyl(g)
}

/// Summary of the local computation at `(sigma, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalReport {
    pub h_p: Poly,
    pub h_p_factored: String,
    pub rho_h_p: Poly,
    pub oracle: Poly,
    pub oracle_agrees: bool,
    pub inclusive_range_agrees: bool,
    pub y_p_exact: bool,
    pub radius: i64,
    pub image: Option<Result<(Vec<i64>, Poly), DmodError>>,
}

pub fn local_report(gd: &GradingData, cone: &[usize], p: &[i64], g: Option<&Poly>) -> Result<LocalReport, DmodError> {
    let factors = h_p_factors(gd, cone, p)?;
    let h = product_of_factors(gd.d(), &factors);
    let ip = gd.iota_of(p);
    let radius = ip.iter().map(|v| v.abs()).max().unwrap_or(0).max(1) + 2;
    let oracle = j_p_oracle(gd, cone, p, radius)?;
    let inclusive = product_of_factors(gd.d(), &h_p_factors_inclusive(gd, cone, p)?);
    let rho_h = rho(gd, &h);
    let y_p_exact = vanishes_exactly_on_y_p(gd, cone, p, &rho_h, radius)?;
    Ok(LocalReport {
        h_p_factored: render_factors(&factors),
        oracle_agrees: oracle == h,
        inclusive_range_agrees: oracle == inclusive,
        h_p: h,
        rho_h_p: rho_h,
        oracle,
        y_p_exact,
        radius,
        image: g.map(|g| local_op_image(gd, cone, p, g)),
    })
}

/// Coefficient matrix test behind the linear independence of
/// `rho(theta_i) + m_i` and `rho(theta_j) + m_j`.
pub fn rho_pair_independent(gd: &GradingData, i: usize, j: usize, mi: i64, mj: i64) -> bool {
    let d = gd.d();
    let a = rho(gd, &(&Poly::var(d, i) + &Poly::constant(d, q(mi))));
    let b = rho(gd, &(&Poly::var(d, j) + &Poly::constant(d, q(mj))));
    let n = gd.n();
    let coeffs = |p: &Poly| -> Vec<Q> {
        let mut v: Vec<Q> = (0..n)
            .map(|l| {
                let mut e = vec![0; n];
                e[l] = 1;
                p.coeff(&e)
            })
            .collect();
        v.push(p.coeff(&vec![0; n]));
        v
    };
    let (ca, cb) = (coeffs(&a), coeffs(&b));
    // rank 2 iff some 2x2 minor is nonzero
    (0..ca.len()).any(|s| (s + 1..ca.len()).any(|t| !(&ca[s] * &cb[t] - &ca[t] * &cb[s]).is_zero()))
}
