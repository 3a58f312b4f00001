//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Randomized parts honour `TORIC_DMOD_SEED`.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_dmod_core::charvar;
use toric_dmod_core::dmod::{self, GradedPresentation};
use toric_dmod_core::fan_cox::{grading_data, ClassElem, GradingData};
use toric_dmod_core::fixtures;
use toric_dmod_core::groebner::ideal::{krull_dimension, Dimension, Ideal};
use toric_dmod_core::groebner::{groebner_ideal, FreeModuleElement, MonomialOrder};
use toric_dmod_core::poly::{q, Poly, Q};
use toric_dmod_core::weyl::{tau, WeylElement, WeylMonomial};

const FANS: [&str; 4] = ["p1", "p2", "p1xp1", "f1"];

fn gd_of(name: &str) -> GradingData {
    grading_data(&fixtures::by_name(name).unwrap()).unwrap()
}

/// Outcome of one criterion: number of checks and the failures seen.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }
}

fn all_classes(gd: &GradingData, lo: i64, hi: i64) -> Vec<ClassElem> {
    let r = gd.class_arity();
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out.into_iter().flat_map(|v: Vec<i64>| (lo..=hi).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out.into_iter().map(|v| gd.reduce_class(&ClassElem(v))).collect()
}

fn box_points(dim: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| (-radius..=radius).map(move |c| [v.clone(), vec![c]].concat()))
            .collect();
    }
    out
}

fn random_class(gd: &GradingData, rng: &mut ChaCha8Rng) -> ClassElem {
    gd.reduce_class(&ClassElem((0..gd.class_arity()).map(|_| rng.gen_range(-2..=2)).collect()))
}

/// Weyl monomials with every exponent at most `cap`, grouped by degree.
fn monomials_by_degree(gd: &GradingData, cap: u32) -> Vec<Vec<WeylMonomial>> {
    let d = gd.d();
    let mut groups: BTreeMap<ClassElem, Vec<WeylMonomial>> = BTreeMap::new();
    let total = (cap as usize + 1).pow(2 * d as u32);
    for mut idx in 0..total {
        let mut flat = Vec::with_capacity(2 * d);
        for _ in 0..2 * d {
            flat.push((idx % (cap as usize + 1)) as u32);
            idx /= cap as usize + 1;
        }
        let m = WeylMonomial::from_flat(&flat);
        groups.entry(WeylElement::degree_of(gd, &m)).or_default().push(m);
    }
    groups.into_values().collect()
}

fn random_homogeneous(groups: &[Vec<WeylMonomial>], rng: &mut ChaCha8Rng, d: usize) -> WeylElement {
    let group = &groups[rng.gen_range(0..groups.len())];
    let mut f = WeylElement::zero(d);
    for _ in 0..rng.gen_range(1..=3) {
        let m = group[rng.gen_range(0..group.len())].clone();
        let c = rng.gen_range(-3i64..=3);
        if c != 0 {
            f.add_term(m, q(c));
        }
    }
    if f.is_zero() {
        f.add_term(group[0].clone(), q(1));
    }
    f
}

fn random_theta_poly(d: usize, rng: &mut ChaCha8Rng) -> Poly {
    let mut g = Poly::zero(d);
    for _ in 0..rng.gen_range(1..=3) {
        let exp: Vec<u32> = (0..d).map(|_| rng.gen_range(0..=1)).collect();
        g.add_term(exp, q(rng.gen_range(-3..=3)));
    }
    g
}

fn c1_char_ideal() -> Tally {
    let mut t = Tally::default();
    for name in FANS {
        let gd = gd_of(name);
        let z = charvar::z_ideal(&gd);
        let expected = Dimension::Dim(gd.d() + gd.n());
        for b in all_classes(&gd, -2, 2) {
            let m = dmod::d_module_left(&gd, &b);
            let j = charvar::characteristic_ideal(&m);
            t.check(j == z, || format!("{name} b={b}: j = {j}"));
            let dim = krull_dimension(&j);
            t.check(dim == expected, || format!("{name} b={b}: dim {dim}"));
        }
    }
    t
}

fn c2_dimensions() -> Tally {
    let mut t = Tally::default();
    for name in FANS {
        let gd = gd_of(name);
        let (d, n) = (gd.d(), gd.n());
        let o = charvar::dimension_report(&gd, &dmod::structure_sheaf_module(&gd)).unwrap();
        t.check(o.dim == Dimension::Dim(d) && o.sheaf_dim == Some(n), || {
            format!("{name} structure sheaf: {} / {:?}", o.dim, o.sheaf_dim)
        });
        let dl = charvar::dimension_report(&gd, &dmod::d_module_left(&gd, &gd.zero_class())).unwrap();
        t.check(dl.dim == Dimension::Dim(d + n) && dl.sheaf_dim == Some(2 * n), || {
            format!("{name} D_L(0): {} / {:?}", dl.dim, dl.sheaf_dim)
        });
        let tor = charvar::dimension_report(&gd, &dmod::torsion_module(&gd)).unwrap();
        t.check(tor.torsion && tor.sheaf_dim.is_none(), || format!("{name} torsion module: sheaf {:?}", tor.sheaf_dim));
    }
    t
}

fn c3_containment(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for name in FANS {
        let gd = gd_of(name);
        let d = gd.d();
        let groups = monomials_by_degree(&gd, 1);
        for k in 0..20 {
            let b = random_class(&gd, &mut rng);
            let base = dmod::d_module_left(&gd, &b);
            let mut relations = base.relations.clone();
            for r in &base.relations {
                let h = random_homogeneous(&groups, &mut rng, d);
                relations.push(FreeModuleElement::new(vec![&h * &r.components[0]]));
            }
            for _ in 0..rng.gen_range(0..=1) {
                relations.push(FreeModuleElement::new(vec![random_homogeneous(&groups, &mut rng, d)]));
            }
            let m = GradedPresentation { relations, ..base };
            let theta_ok = dmod::check_theta_condition(&gd, &m).holds;
            t.check(theta_ok, || format!("{name} module {k}: theta condition fails"));
            let contained = charvar::verify_char_containment(&gd, &m);
            t.check(matches!(contained, Ok(true)), || format!("{name} module {k}: {contained:?}"));
        }
    }
    t
}

fn c4_local() -> Tally {
    let mut t = Tally::default();
    for name in FANS {
        let gd = gd_of(name);
        let n = gd.n();
        let qs = box_points(n, 6);
        for cone in gd.fan().max_cones() {
            for p in box_points(n, 3) {
                let h = dmod::h_p(&gd, cone, &p).unwrap();
                let w = dmod::rho(&gd, &h);
                let exact = dmod::vanishes_exactly_on_y_p(&gd, cone, &p, &w, 6).unwrap();
                t.check(exact, || format!("{name} cone {cone:?} p={p:?}: rho(h_p) is not exact on Y(p)"));
                let radius = gd.iota_of(&p).iter().map(|v| v.abs()).max().unwrap().max(1) + 1;
                let oracle = dmod::j_p_oracle(&gd, cone, &p, radius).unwrap();
                t.check(oracle == h, || format!("{name} cone {cone:?} p={p:?}: oracle disagrees"));
                for q_pt in &qs {
                    t.check(dmod::action_identity_y(&gd, &p, &h, q_pt), || {
                        format!("{name} p={p:?} q={q_pt:?}: y-side identity")
                    });
                    t.check(dmod::action_identity_x(&gd, &p, &h, q_pt), || {
                        format!("{name} p={p:?} q={q_pt:?}: x-side identity")
                    });
                }
            }
        }
    }
    t
}

fn c5_weyl(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for name in FANS {
        let gd = gd_of(name);
        let d = gd.d();
        for i in 0..d {
            for r in 1..=6u32 {
                let mut e = vec![0; d];
                e[i] = r;
                let lhs = &WeylElement::x_pow(d, &e) * &WeylElement::d_pow(d, &e);
                let mut rhs = WeylElement::one(d);
                for j in 1..=r as i64 {
                    rhs = &rhs * &(&WeylElement::theta(d, i) + &WeylElement::constant(d, q(1 - j)));
                }
                t.check(lhs == rhs, || format!("{name}: x{}^{r} d{}^{r}", i + 1, i + 1));
            }
        }
        for j in 0..gd.free_rank() {
            let th = gd.theta_u(j);
            let expected = &th.scale(&q(-1)) + &WeylElement::constant(d, q(-gd.pairing(j, gd.e_bar())));
            t.check(tau(&th) == expected, || format!("{name}: tau(theta_u{})", j + 1));
        }
        let groups = monomials_by_degree(&gd, 2);
        for k in 0..200 {
            let f = random_homogeneous(&groups, &mut rng, d);
            let g = random_homogeneous(&groups, &mut rng, d);
            t.check(tau(&tau(&f)) == f, || format!("{name} #{k}: tau is not an involution on {f}"));
            t.check(tau(&(&f * &g)) == &tau(&g) * &tau(&f), || format!("{name} #{k}: tau is not an anti-automorphism"));
            let c = f.homogeneous_degree(&gd).unwrap();
            let b = random_class(&gd, &mut rng);
            let a = gd.sub_classes(&c, &b);
            for j in 0..gd.free_rank() {
                t.check(dmod::bimodule_identity_check(&gd, &f, j, &b, &c).unwrap(), || {
                    format!("{name} #{k}: bimodule identity for {f}")
                });
                t.check(dmod::d_equals_d_prime_check(&gd, &f, j, &a, &b).unwrap(), || {
                    format!("{name} #{k}: D = D' for {f}")
                });
            }
        }
    }
    t
}

fn c6_nonzerodivisor(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for name in ["p1", "p2"] {
        let gd = gd_of(name);
        let d = gd.d();
        let mut bases = BTreeMap::new();
        let mut done = 0;
        while done < 100 {
            let b = random_class(&gd, &mut rng);
            let g = random_theta_poly(d, &mut rng);
            if dmod::l0_ideal(&gd, &b).contains(&g) {
                continue;
            }
            let a: Vec<i64> = (0..d).map(|_| rng.gen_range(-2..=2)).collect();
            let gb = bases.entry(b.clone()).or_insert_with(|| dmod::d_module_left(&gd, &b).relation_basis());
            let elem = dmod::nonzerodivisor_element(&gd, &a, &g);
            let nf = gb.normal_form_weyl(&FreeModuleElement::new(vec![elem]));
            t.check(!nf.is_zero(), || format!("{name} b={b} a={a:?} g={g:?}: zero normal form"));
            done += 1;
        }
    }
    t
}

/// Monomials of total degree at most `deg` in `n` variables.
fn monomials_upto(n: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v: Vec<u32>| (0..=deg).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out.retain(|m| m.iter().sum::<u32>() <= deg);
    out
}

/// Row-echelon span of the Macaulay matrix. Columns of degree above `low`
/// come first, so rows pivoting in the low block span `I` truncated to
/// degree `low` (as far as the multiplier bound reaches).
struct Macaulay {
    col: BTreeMap<Vec<u32>, usize>,
    pivots: BTreeMap<usize, BTreeMap<usize, BigRational>>,
}

impl Macaulay {
    fn new(n: usize, gens: &[Poly], low: u32, high: u32) -> Self {
        let mut mons = monomials_upto(n, high);
        mons.sort_by_key(|m| (m.iter().sum::<u32>() <= low, std::cmp::Reverse(m.iter().sum::<u32>()), m.clone()));
        let col = mons.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mat = Macaulay { col, pivots: BTreeMap::new() };
        for g in gens {
            let gdeg = g.total_degree().unwrap_or(0);
            if gdeg > high {
                continue;
            }
            for m in monomials_upto(n, high - gdeg) {
                let shifted = &Poly::monomial(m, q(1)) * g;
                let row = mat.vector(&shifted);
                if let Some((p, r)) = mat.reduce(row) {
                    mat.pivots.insert(p, r);
                }
            }
        }
        mat
    }

    fn vector(&self, f: &Poly) -> BTreeMap<usize, BigRational> {
        f.terms().map(|(e, c)| (self.col[e], c.clone())).collect()
    }

    /// Reduces `row`; returns its pivot and the remainder unless it vanishes.
    fn reduce(&self, mut row: BTreeMap<usize, BigRational>) -> Option<(usize, BTreeMap<usize, BigRational>)> {
        loop {
            let (&c, v) = row.iter().next()?;
            let Some(p) = self.pivots.get(&c) else {
                let inv = v.recip();
                return Some((c, row.into_iter().map(|(k, x)| (k, x * &inv)).collect()));
            };
            let factor = v.clone();
            for (k, x) in p {
                let e = row.entry(*k).or_insert_with(BigRational::zero);
                *e -= x * &factor;
                if e.is_zero() {
                    row.remove(k);
                }
            }
        }
    }

    fn contains(&self, f: &Poly) -> bool {
        self.reduce(self.vector(f)).is_none()
    }

    fn low_dimension(&self, low_start: usize) -> usize {
        self.pivots.keys().filter(|&&k| k >= low_start).count()
    }
}

fn random_poly(n: usize, deg: u32, terms: usize, homogeneous: bool, rng: &mut ChaCha8Rng) -> Poly {
    let mons: Vec<Vec<u32>> =
        monomials_upto(n, deg).into_iter().filter(|m| !homogeneous || m.iter().sum::<u32>() == deg).collect();
    let mut f = Poly::zero(n);
    for _ in 0..terms {
        let c: Q = q(rng.gen_range(-4..=4));
        f.add_term(mons[rng.gen_range(0..mons.len())].clone(), c);
    }
    f
}

fn c7_macaulay(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..10 {
        let homogeneous = k % 2 == 0;
        let n = if homogeneous { 2 + (k / 2) % 3 } else { 2 + (k / 2) % 2 };
        let gens: Vec<Poly> = (0..rng.gen_range(2..=3))
            .map(|_| {
                let deg = rng.gen_range(1..=2);
                random_poly(n, deg, 3, homogeneous, &mut rng)
            })
            .filter(|g| !g.is_zero())
            .collect();
        let ideal = Ideal::new(n, &gens);
        let high = if homogeneous { 4 } else { 9 };
        let mac = Macaulay::new(n, &gens, 4, high);
        let low_start = mac.col.len() - monomials_upto(n, 4).len();
        let gb = groebner_ideal(n, &gens, &MonomialOrder::DegRevLex);
        let lead = gb.leading_terms();
        let in_lead = monomials_upto(n, 4)
            .into_iter()
            .filter(|m| lead.iter().any(|l| l.exp.iter().zip(m).all(|(a, b)| a <= b)))
            .count();
        t.check(in_lead == mac.low_dimension(low_start), || {
            format!("ideal {k}: dim of degree<=4 part: GB {in_lead}, Macaulay {}", mac.low_dimension(low_start))
        });
        for (&p, row) in &mac.pivots {
            if p < low_start {
                continue;
            }
            let mut f = Poly::zero(n);
            let inv: BTreeMap<usize, &Vec<u32>> = mac.col.iter().map(|(m, &i)| (i, m)).collect();
            for (c, v) in row {
                f.add_term(inv[c].clone(), v.clone());
            }
            t.check(ideal.contains(&f), || format!("ideal {k}: Macaulay row not in ideal"));
        }
        for s in 0..100 {
            let mut f = random_poly(n, 4, 4, false, &mut rng);
            if s % 2 == 0 {
                for g in &gens {
                    let m = random_poly(n, 4 - g.total_degree().unwrap_or(0), 2, false, &mut rng);
                    f = &(&m * g) + &if s % 4 == 0 { Poly::zero(n) } else { f };
                }
            }
            let (a, b) = (ideal.contains(&f), mac.contains(&f));
            t.check(a == b, || format!("ideal {k}: membership disagrees (GB {a}, Macaulay {b})"));
        }
    }
    t
}

fn c8_charts() -> Tally {
    let mut t = Tally::default();
    for name in ["p1", "p1xp1"] {
        let gd = gd_of(name);
        for (label, m) in [
            ("D_L(0)", dmod::d_module_left(&gd, &gd.zero_class())),
            ("structure sheaf", dmod::structure_sheaf_module(&gd)),
        ] {
            let qc = charvar::verify_quotient_dimension(&gd, &m).unwrap();
            t.check(qc.agrees, || format!("{name} {label}: charts {:?} vs sheaf {:?}", qc.chart_max, qc.sheaf_dim));
        }
    }
    let gd = gd_of("p1");
    let chart = charvar::chart_ideal(&gd, &dmod::d_module_left(&gd, &gd.zero_class()), &[0]).unwrap();
    let names = chart.names();
    t.check(chart.presentation.is_zero(), || format!("P1 presentation {}", chart.presentation.render(&names)));
    let rendered = chart.image.render(&names);
    t.check(rendered == "(t1*s1 + s2)", || format!("P1 chart ideal {rendered}"));
    t
}

fn c9_golden() -> Tally {
    let mut t = Tally::default();
    let bad = common::golden_mismatches(false);
    t.checks = common::FANS.len();
    t.failures = bad;
    t
}

fn main() {
    let seed = toric_dmod::seed_from_env(20240601);
    type Criterion = (&'static str, u64, Box<dyn Fn() -> Tally>);
    let criteria: Vec<Criterion> = vec![
        ("characteristic ideal of D_L(b) equals the Z ideal, dim d+n", 10, Box::new(c1_char_ideal)),
        ("dimensions of A/A(d), D_L(0) and the torsion module", 10, Box::new(c2_dimensions)),
        ("CharVar inside Z for random theta-condition modules", 60, Box::new(move || c3_containment(seed))),
        ("rho(h_p) cuts out Y(p); action identity on the box", 30, Box::new(c4_local)),
        ("Weyl identities, tau, bimodule and D = D' identities", 30, Box::new(move || c5_weyl(seed ^ 5))),
        ("x^e x^(a+) d^(a-) g is nonzero modulo D_L(b)", 60, Box::new(move || c6_nonzerodivisor(seed ^ 6))),
        ("Groebner membership matches a Macaulay-matrix oracle", 60, Box::new(move || c7_macaulay(seed ^ 7))),
        ("chart dimensions and the P1 chart ideal", 30, Box::new(c8_charts)),
        ("golden CLI reports are byte-identical across runs", 60, Box::new(c9_golden)),
    ];
    println!("seed {seed}");
    let mut failed = 0;
    for (i, (title, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let tally = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let ok = tally.failures.is_empty() && in_time && tally.checks > 0;
        if !ok {
            failed += 1;
        }
        println!(
            "{} {}: {} ({} checks, {} failed, {:.2}s, limit {}s)",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            title,
            tally.checks,
            tally.failures.len(),
            elapsed.as_secs_f64(),
            limit
        );
        for f in tally.failures.iter().filter(|f| !f.is_empty()) {
            println!("    {f}");
        }
        if !in_time {
            println!("    over the time limit");
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
