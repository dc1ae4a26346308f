use clf_core::granville::granville_route_supercongruence;
use clf_core::qseries::eta::{hauptmodul, weight_three_form, NamedSeries};
use clf_core::qseries::formal::{
    derive_c_from_b, modppower_property_suite, sb_route_supercongruence, verify_modppower_lemma,
};
use clf_core::qseries::identities::{
    clf_generating_series, clf_operator, fine_c, picard_fuchs_operator, verify_clf_ode,
    verify_e_equals_fine, verify_generating_identity, verify_picard_fuchs, verify_weight3_identity,
    weight_three_product,
};
use clf_core::qseries::QSeries;
use clf_core::sequences::SequenceId;
use clf_core::Caps;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn identities_to_order_100() {
    for r in [
        verify_generating_identity(100).unwrap(),
        verify_weight3_identity(100).unwrap(),
        verify_e_equals_fine(100).unwrap(),
        verify_clf_ode(100).unwrap(),
        verify_picard_fuchs(100).unwrap(),
    ] {
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn composition_has_power_of_two_denominators() {
    let t = hauptmodul().expand(60).unwrap();
    let composed = clf_generating_series(60).unwrap().compose(&t).unwrap();
    for k in 0..60 {
        let c = composed.coeff(k).unwrap();
        assert!(c.is_integer(), "q^{k}: {c}");
    }
    for (_, c) in t.pow(7).terms() {
        let mut d = c.denom().clone();
        while (&d % 2u32).is_zero() {
            d /= 2u32;
        }
        assert_eq!(d, BigInt::from(1));
    }
}

#[test]
fn weight_three_lhs_is_even() {
    let lhs = weight_three_product(100).unwrap();
    for k in (1..100).step_by(2) {
        assert!(lhs.coeff(k).unwrap().is_zero(), "q^{k}");
    }
    let e2 = NamedSeries::E2.expand(100).unwrap();
    assert_eq!(lhs, e2);
}

#[test]
fn fine_reproduces_e() {
    let e = weight_three_form().expand(101).unwrap();
    for n in 1..=100 {
        assert_eq!(
            e.coeff(n as i64).unwrap(),
            int(-4 * fine_c(n).unwrap() as i64),
            "n={n}"
        );
    }
}

#[test]
fn operators_are_proportional_under_doubling() {
    let order = 50;
    let y = QSeries::from_i64(
        0,
        &(0..order).map(|n| n * n - 7 * n + 2).collect::<Vec<_>>(),
        order,
    );
    let halved = QSeries::new(
        0,
        (0..order)
            .map(|k| y.coeff(k).unwrap() / BigRational::from_integer(BigInt::from(2).pow(k as u32)))
            .collect(),
        order,
    );
    let pf = picard_fuchs_operator(&halved);
    let l = clf_operator(&y);
    for k in 0..order - 2 {
        let want =
            l.coeff(k).unwrap() / BigRational::from_integer(BigInt::from(2).pow(k as u32 + 1));
        assert_eq!(pf.coeff(k).unwrap(), want, "t^{k}");
    }
}

#[test]
fn printed_expansions() {
    let t = NamedSeries::T.expand(11).unwrap();
    let half = BigRational::new(1.into(), 2.into());
    assert_eq!(t.coeff(1).unwrap(), half);
    assert_eq!(t.coeff(9).unwrap(), BigRational::new(1509.into(), 2.into()));
    assert_eq!(t.coeff(10).unwrap(), int(-1436));
    let f = NamedSeries::F.expand(14).unwrap();
    let nonzero: Vec<(i64, i64)> = f
        .terms()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.to_integer().try_into().unwrap()))
        .collect();
    assert_eq!(
        nonzero,
        vec![
            (0, 1),
            (1, 4),
            (2, 4),
            (4, 4),
            (5, 8),
            (8, 4),
            (9, 4),
            (10, 8),
            (13, 8)
        ]
    );
    let e = NamedSeries::E.expand(8).unwrap();
    assert_eq!(
        e.coefficients(0, 8).unwrap(),
        [1, -4, -4, 32, -4, -104, 32, 192].map(int).to_vec()
    );
}

#[test]
fn modppower_suite() {
    let r = modppower_property_suite(1, 50, 2, 64).unwrap();
    assert!(r.passed(), "{r}");
    assert!(verify_modppower_lemma(&[2, -3, 0, 5], 5, 2, 64)
        .unwrap()
        .passed());
}

#[test]
fn derived_c_matches_fine() {
    let n_max = 60;
    let order = 2 * n_max + 2;
    let b = SequenceId::Clf.values(order as u64).unwrap();
    let t = NamedSeries::T.expand(order + 1).unwrap();
    let c = derive_c_from_b(&b, &t, 2, 2, n_max).unwrap();
    assert_eq!(c.len(), n_max);
    for (i, c) in c.iter().enumerate() {
        assert_eq!(
            *c,
            BigInt::from(-2 * fine_c(i as u64 + 1).unwrap()),
            "c_{}",
            i + 1
        );
    }
    assert!(derive_c_from_b(&b, &t, 2, 2, 200).is_err());
}

#[test]
fn sb_route_agrees_with_granville_route() {
    let caps = Caps::default();
    for p in [3u64, 5, 7] {
        let sb = sb_route_supercongruence(6, p, 3, 60).unwrap();
        assert!(sb.passed(), "{sb}");
        for r in 1..=3 {
            for m in 1..=6 {
                if m * p.pow(r) >= 60 {
                    continue;
                }
                assert!(granville_route_supercongruence(m, p, r, &caps)
                    .unwrap()
                    .passed());
            }
        }
    }
}

fn small_series() -> impl Strategy<Value = QSeries> {
    (prop::collection::vec(-20i64..20, 1..8), 0i64..3)
        .prop_map(|(c, start)| QSeries::from_i64(start, &c, 12))
}

proptest! {
    #[test]
    fn series_ring_laws(a in small_series(), b in small_series(), c in small_series()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn inverse_of_unit(coeffs in prop::collection::vec(-9i64..9, 1..8)) {
        let mut coeffs = coeffs;
        coeffs[0] = if coeffs[0] == 0 { 1 } else { coeffs[0] };
        let a = QSeries::from_i64(0, &coeffs, 15);
        let inv = a.invert().unwrap();
        prop_assert_eq!(&a * &inv, QSeries::one(15));
    }

    #[test]
    fn random_polynomial_lemma(seed in 0u64..1000) {
        let r = modppower_property_suite(seed, 3, 1, 30).unwrap();
        prop_assert!(r.passed(), "{}", r);
    }
}
