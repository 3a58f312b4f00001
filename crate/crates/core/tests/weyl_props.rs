use proptest::prelude::*;

use toric_dmod_core::fan_cox::grading_data;
use toric_dmod_core::fixtures;
use toric_dmod_core::poly::q;
use toric_dmod_core::weyl::{act, from_theta_form, tau, to_theta_form, LaurentPoly, WeylElement, WeylMonomial};

const D: usize = 2;

fn element() -> impl Strategy<Value = WeylElement> {
    prop::collection::vec((prop::collection::vec(0u32..3, 2 * D), -4i64..=4), 1..4).prop_map(|terms| {
        let mut f = WeylElement::zero(D);
        for (flat, c) in terms {
            f.add_term(WeylMonomial::from_flat(&flat), q(c));
        }
        f
    })
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-3i64..4, D), -4i64..=4), 1..4).prop_map(|terms| {
        let mut g = LaurentPoly::zero(vec![true; D]);
        for (e, c) in terms {
            g.add_term(e, q(c));
        }
        g
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn associative(f in element(), g in element(), h in element()) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn tau_involution_and_anti(f in element(), g in element()) {
        prop_assert_eq!(tau(&tau(&f)), f.clone());
        prop_assert_eq!(tau(&(&f * &g)), &tau(&g) * &tau(&f));
    }

    #[test]
    fn theta_form_round_trip(f in element()) {
        prop_assert_eq!(from_theta_form(&to_theta_form(&f)), f);
    }

    #[test]
    fn action_is_a_module_action(f in element(), g in element(), h in laurent()) {
        prop_assert_eq!(act(&(&f * &g), &h), act(&f, &act(&g, &h)));
    }

    #[test]
    fn display_parses_back(f in element()) {
        prop_assert_eq!(WeylElement::parse(D, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn grading_is_multiplicative(a in prop::collection::vec(0u32..3, 2 * D), b in prop::collection::vec(0u32..3, 2 * D)) {
        let gd = grading_data(&fixtures::p1()).unwrap();
        let f = WeylElement::monomial(WeylMonomial::from_flat(&a), q(1));
        let g = WeylElement::monomial(WeylMonomial::from_flat(&b), q(1));
        let (df, dg) = (f.homogeneous_degree(&gd).unwrap(), g.homogeneous_degree(&gd).unwrap());
        prop_assert_eq!((&f * &g).homogeneous_degree(&gd).unwrap(), gd.add_classes(&df, &dg));
    }
}

#[test]
fn falling_factorial_identity() {
    for d in 1..=3 {
        for i in 0..d {
            let mut rhs = WeylElement::one(d);
            for r in 1..=6u32 {
                let mut e = vec![0; d];
                e[i] = r;
                rhs = &rhs * &(&WeylElement::theta(d, i) + &WeylElement::constant(d, q(1 - r as i64)));
                assert_eq!(&WeylElement::x_pow(d, &e) * &WeylElement::d_pow(d, &e), rhs);
            }
        }
    }
}

#[test]
fn tau_of_euler_operators() {
    for fan in fixtures::all() {
        let gd = grading_data(&fan).unwrap();
        for j in 0..gd.free_rank() {
            let th = gd.theta_u(j);
            let shift = WeylElement::constant(gd.d(), q(-gd.pairing(j, gd.e_bar())));
            assert_eq!(tau(&th), &(-&th) + &shift);
        }
    }
}
