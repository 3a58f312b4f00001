use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_dmod_core::charvar;
use toric_dmod_core::dmod::{self, Side};
use toric_dmod_core::fan_cox::{grading_data, ClassElem, GradingData};
use toric_dmod_core::fixtures;
use toric_dmod_core::groebner::ideal::Dimension;
use toric_dmod_core::poly::q;
use toric_dmod_core::weyl::{WeylElement, WeylMonomial};

fn classes(gd: &GradingData) -> Vec<ClassElem> {
    let mut out = vec![Vec::new()];
    for _ in 0..gd.class_arity() {
        out = out.into_iter().flat_map(|v: Vec<i64>| (-2..=2).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out.into_iter().map(|v| gd.reduce_class(&ClassElem(v))).collect()
}

#[test]
fn generated_modules_satisfy_theta() {
    for fan in fixtures::all() {
        let gd = grading_data(&fan).unwrap();
        for b in classes(&gd) {
            assert!(dmod::check_theta_condition(&gd, &dmod::d_module_left(&gd, &b)).holds);
            assert!(dmod::check_theta_condition(&gd, &dmod::d_module_right(&gd, &b)).holds);
        }
        assert!(dmod::check_theta_condition(&gd, &dmod::structure_sheaf_module(&gd)).holds);
        assert!(dmod::check_theta_condition(&gd, &dmod::torsion_module(&gd)).holds);
    }
}

#[test]
fn swap_is_an_involution_and_keeps_dimension() {
    for fan in fixtures::all() {
        let gd = grading_data(&fan).unwrap();
        let mut modules: Vec<_> = classes(&gd).iter().map(|b| dmod::d_module_left(&gd, b)).collect();
        modules.push(dmod::structure_sheaf_module(&gd));
        modules.push(dmod::d_module_right(&gd, &gd.zero_class()));
        for m in modules {
            let s = dmod::left_right_swap(&gd, &m);
            assert_ne!(s.side, m.side);
            assert_eq!(dmod::left_right_swap(&gd, &s), m.canonical());
            let a = charvar::dimension_report(&gd, &m).unwrap();
            let b = charvar::dimension_report(&gd, &s).unwrap();
            assert_eq!(a.dim, b.dim);
        }
    }
}

#[test]
fn swap_matches_the_worked_example() {
    let gd = grading_data(&fixtures::p1()).unwrap();
    let s = dmod::left_right_swap(&gd, &dmod::d_module_left(&gd, &ClassElem(vec![2])));
    assert_eq!(s, dmod::d_module_right(&gd, &ClassElem(vec![0])));
    assert_eq!(s.side, Side::Right);
}

#[test]
fn d_equals_d_prime_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for fan in fixtures::all() {
        let gd = grading_data(&fan).unwrap();
        let d = gd.d();
        for _ in 0..50 {
            let flat: Vec<u32> = (0..2 * d).map(|_| rng.gen_range(0..3)).collect();
            let m = WeylMonomial::from_flat(&flat);
            let mut f = WeylElement::monomial(m.clone(), q(rng.gen_range(1..5)));
            // a second monomial of the same degree: multiply by some x_i d_i
            let i = rng.gen_range(0..d);
            f = &f + &(&WeylElement::monomial(m, q(1)) * &WeylElement::theta(d, i));
            let c = f.homogeneous_degree(&gd).unwrap();
            let b = gd.reduce_class(&ClassElem((0..gd.class_arity()).map(|_| rng.gen_range(-3..=3)).collect()));
            let a = gd.sub_classes(&c, &b);
            for j in 0..gd.free_rank() {
                assert!(dmod::d_equals_d_prime_check(&gd, &f, j, &a, &b).unwrap());
                assert!(dmod::bimodule_identity_check(&gd, &f, j, &b, &c).unwrap());
            }
        }
    }
}

#[test]
fn rho_of_adjacent_rays_is_independent() {
    for fan in fixtures::all() {
        let gd = grading_data(&fan).unwrap();
        for cone in fan.max_cones() {
            for (x, &i) in cone.iter().enumerate() {
                for &j in &cone[x + 1..] {
                    for (mi, mj) in [(0, 0), (1, -2), (-3, 3)] {
                        assert!(dmod::rho_pair_independent(&gd, i, j, mi, mj));
                    }
                }
            }
        }
    }
}

#[test]
fn h_p_matches_the_oracle() {
    for fan in fixtures::all() {
        let gd = grading_data(&fan).unwrap();
        let n = fan.n();
        for cone in fan.max_cones() {
            for p in [vec![-1; n], vec![2; n], vec![-2; n]] {
                let h = dmod::h_p(&gd, cone, &p).unwrap();
                let r = gd.iota_of(&p).iter().map(|v| v.abs()).max().unwrap().max(1) + 1;
                assert_eq!(dmod::j_p_oracle(&gd, cone, &p, r).unwrap(), h);
                assert!(dmod::regular_by_action(&gd, cone, &p, &h, r + 1));
            }
        }
    }
}

#[test]
fn char_reports_are_consistent() {
    for fan in fixtures::all() {
        let gd = grading_data(&fan).unwrap();
        let (d, n) = (gd.d(), gd.n());
        for m in
            [dmod::structure_sheaf_module(&gd), dmod::d_module_left(&gd, &gd.zero_class()), dmod::torsion_module(&gd)]
        {
            let r = charvar::dimension_report(&gd, &m).unwrap();
            assert!(r.t_invariant);
            assert!(r.saturated.contains_ideal(&r.j));
            if !r.torsion {
                let q = charvar::verify_quotient_dimension(&gd, &m).unwrap();
                assert!(q.agrees, "{:?}", q);
            }
        }
        let j = charvar::characteristic_ideal(&dmod::d_module_left(&gd, &gd.zero_class()));
        assert_eq!(toric_dmod_core::groebner::ideal::krull_dimension(&j), Dimension::Dim(d + n));
    }
}
