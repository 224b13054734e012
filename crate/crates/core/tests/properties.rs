mod common;

use std::cmp::Ordering;

use ballcut_core::expr::{eval, parse, parse_element, Env};
use ballcut_core::orderings::{ordering_sign, place_value};
use ballcut_core::poly::RationalFn;
use ballcut_core::cuts::{Cut, Side};
use ballcut_core::series::rat::{rat, ratio};
use ballcut_core::ultrametric::{dist, Ball, GroupCut};
use ballcut_core::{Exponent, Precision, Series, StdPart};
use common::*;
use proptest::prelude::*;

fn series() -> impl Strategy<Value = Series> {
    prop::collection::vec((0..EXPONENTS.len(), -20i64..=20, 1i64..=6), 1..4).prop_map(|ts| {
        let terms = ts.into_iter().map(|(k, n, d)| {
            let (a, b) = EXPONENTS[k];
            (Exponent::base(ratio(a, b)), ratio(n, d))
        });
        Series::from_terms(K, terms.collect::<Vec<_>>(), None)
    })
}

fn nonzero() -> impl Strategy<Value = Series> {
    series().prop_filter("nonzero", |s| !s.is_exact_zero())
}

fn cut() -> impl Strategy<Value = ballcut_core::cuts::Cut> {
    (any::<u64>(), 0usize..7).prop_map(|(seed, kind)| cut_of_kind(&mut rng(seed), kind))
}

fn rfn() -> impl Strategy<Value = RationalFn> {
    any::<u64>().prop_map(|seed| rational_fn(&mut rng(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.sub(&a).unwrap().is_exact_zero());
    }

    #[test]
    fn division_inverts_multiplication(a in series(), b in nonzero()) {
        let prec = Precision::default();
        let back = a.mul(&b).unwrap().div(&b, &prec).unwrap();
        prop_assert!(back.sub(&a).unwrap().terms().is_empty());
    }

    #[test]
    fn sign_is_multiplicative(a in nonzero(), b in nonzero()) {
        let s = a.mul(&b).unwrap().sign().unwrap();
        prop_assert_eq!(s, a.sign().unwrap() * b.sign().unwrap());
        let sum = a.add(&b).unwrap();
        if a.sign().unwrap() > 0 && b.sign().unwrap() > 0 {
            prop_assert_eq!(sum.sign().unwrap(), 1);
        }
    }

    #[test]
    fn printed_form_parses_back(a in series()) {
        let back = parse_element(&a.to_string(), &Precision::default()).unwrap();
        prop_assert_eq!(back, a.clone());
        let json = serde_json::to_string(&a).unwrap();
        let from: Series = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(from, a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in series(), b in nonzero()) {
        let env = Env::new(K, Precision::default());
        let ev = |s: String| eval(&parse(&s).unwrap(), &env).unwrap();
        prop_assert_eq!(ev(format!("({a}) + ({b})")), a.add(&b).unwrap());
        prop_assert_eq!(ev(format!("({a}) * ({b})")), a.mul(&b).unwrap());
        prop_assert_eq!(ev(format!("-({a})")), a.neg());
        let q = ev(format!("({a}) / ({b})"));
        prop_assert_eq!(q, a.div(&b, &Precision::default()).unwrap());
    }

    #[test]
    fn ultrametric_inequality(a in series(), b in series(), c in series()) {
        let (ab, bc, ac) = (dist(&a, &b).unwrap(), dist(&b, &c).unwrap(), dist(&a, &c).unwrap());
        let min = if ab.cmp_in(&bc, K) == Ordering::Less { ab } else { bc };
        prop_assert!(ac.cmp_in(&min, K) != Ordering::Less);
    }

    #[test]
    fn orderings_respect_products_and_sums(c in cut(), f in rfn(), g in rfn()) {
        let sf = ordering_sign(&c, &f).unwrap();
        let sg = ordering_sign(&c, &g).unwrap();
        prop_assert_eq!(ordering_sign(&c, &f.mul(&g).unwrap()).unwrap(), sf * sg);
        if sf > 0 && sg > 0 {
            prop_assert_eq!(ordering_sign(&c, &f.add(&g).unwrap()).unwrap(), 1);
        }
        prop_assert_eq!(ordering_sign(&c, &f.neg()).unwrap(), -sf);
    }

    #[test]
    fn places_respect_products(c in cut(), f in rfn(), g in rfn()) {
        let prec = Precision::default();
        let (pf, pg) = (place_value(&c, &f, &prec).unwrap(), place_value(&c, &g, &prec).unwrap());
        let pfg = place_value(&c, &f.mul(&g).unwrap(), &prec).unwrap();
        match (&pf, &pg) {
            (StdPart::Finite(x), StdPart::Finite(y)) => prop_assert_eq!(pfg, StdPart::Finite(x * y)),
            (StdPart::Infinity, StdPart::Finite(y)) | (StdPart::Finite(y), StdPart::Infinity)
                if *y != ratio(0, 1) => prop_assert_eq!(pfg, StdPart::Infinity),
            _ => {}
        }
        if let (StdPart::Finite(x), StdPart::Finite(y)) = (&pf, &pg) {
            let sum = place_value(&c, &f.add(&g).unwrap(), &prec).unwrap();
            prop_assert_eq!(sum, StdPart::Finite(x + y));
        }
    }
}

#[test]
fn infinity_is_unsigned_but_orderings_are_not() {
    let edge = |side| Cut::ball_edge(Ball::new(konst(rat(0)), GroupCut::AllPositive).unwrap(), side);
    let (a, b) = (edge(Side::Plus), edge(Side::Minus));
    let inv = RationalFn::constant(konst(rat(1))).div(&RationalFn::x(K)).unwrap();
    let prec = Precision::default();
    assert_eq!(place_value(&a, &inv, &prec).unwrap(), StdPart::Infinity);
    assert_eq!(place_value(&b, &inv, &prec).unwrap(), StdPart::Infinity);
    assert_eq!(ordering_sign(&a, &inv).unwrap(), 1);
    assert_eq!(ordering_sign(&b, &inv).unwrap(), -1);
}
