use clf_core::arith::{self, legendre_symbol, odd_primes_in};
use clf_core::congruences::{
    base_p_digits, central_value, two_square_rep, v5_conjecture_scan, verify_apery_symmetries,
    verify_clf_symmetry, verify_franel_symmetry, verify_lucas_product, verify_special_values,
    verify_supercongruence, AperyFamily, PrimePower,
};
use clf_core::sequences::SequenceId;
use clf_core::{Caps, CheckKind, Error};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

#[test]
fn clf_symmetry_below_100() {
    for p in odd_primes_in(3, 100) {
        let r = verify_clf_symmetry(p).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, 2 * p);
        assert!(verify_special_values(p).unwrap().passed(), "p={p}");
    }
}

#[test]
fn divisibility_set_is_mirror_symmetric() {
    for p in odd_primes_in(3, 100) {
        let values = SequenceId::Clf.values(p - 1).unwrap();
        let modulus = BigInt::from(p);
        let set: Vec<bool> = values.iter().map(|v| v.is_multiple_of(&modulus)).collect();
        let mirrored: Vec<bool> = set.iter().rev().copied().collect();
        assert_eq!(set, mirrored, "p={p}");
    }
}

#[test]
fn central_value_both_directions() {
    for p in odd_primes_in(3, 200) {
        assert!(central_value(p).unwrap().passed(), "p={p}");
        let half = SequenceId::Clf.value((p - 1) / 2).unwrap();
        assert_eq!(
            half.is_multiple_of(&BigInt::from(p)),
            matches!(p % 8, 5 | 7),
            "p={p}"
        );
    }
}

#[test]
fn two_square_representations() {
    assert_eq!(
        (two_square_rep(3).unwrap().a, two_square_rep(3).unwrap().b),
        (1, 1)
    );
    assert_eq!(
        (two_square_rep(11).unwrap().a, two_square_rep(11).unwrap().b),
        (3, 1)
    );
    assert_eq!(
        (two_square_rep(17).unwrap().a, two_square_rep(17).unwrap().b),
        (3, 2)
    );
    for p in odd_primes_in(3, 2000) {
        match two_square_rep(p) {
            Ok(rep) => {
                assert!(matches!(p % 8, 1 | 3));
                assert_eq!(rep.a * rep.a + 2 * rep.b * rep.b, p);
            }
            Err(Error::Domain(_)) => assert!(matches!(p % 8, 5 | 7)),
            Err(e) => panic!("p={p}: {e}"),
        }
    }
    assert!(two_square_rep(9).is_err());
}

#[test]
fn related_symmetries_below_60() {
    for p in odd_primes_in(3, 60) {
        assert!(verify_franel_symmetry(p).unwrap().passed(), "franel p={p}");
        let family = if p == 3 {
            AperyFamily::A
        } else {
            AperyFamily::Both
        };
        assert!(
            verify_apery_symmetries(p, family).unwrap().passed(),
            "apery p={p}"
        );
    }
    assert!(verify_apery_symmetries(3, AperyFamily::B).is_err());
}

#[test]
fn supercongruence_grid() {
    let caps = Caps::default();
    for p in [3u64, 5, 7, 11, 13] {
        for r in 1..=3 {
            for m in 1..=6u64 {
                if m * p.pow(r) > 4000 {
                    continue;
                }
                let pr = PrimePower::new(p, r).unwrap();
                assert!(
                    verify_supercongruence(m, &pr, &caps).unwrap().passed(),
                    "m={m} p={p} r={r}"
                );
            }
        }
    }
}

#[test]
fn supercongruence_is_sharp_for_a_known_case() {
    // P_9 ≡ P_3 (mod 9) but not mod 27
    let v = SequenceId::Clf.values(9).unwrap();
    let diff = &v[9] - &v[3];
    assert!(diff.is_multiple_of(&BigInt::from(9)));
    assert!(!diff.is_multiple_of(&BigInt::from(27)));
}

#[test]
fn lucas_product_primes_to_50() {
    let caps = Caps::default();
    for p in (2..=50).filter(|&p| arith::is_prime(p)) {
        assert!(
            verify_lucas_product(p, 200, &caps).unwrap().passed(),
            "p={p}"
        );
    }
}

#[test]
fn v5_scan_to_3000() {
    let r = v5_conjecture_scan(3000, &Caps::default()).unwrap();
    assert_eq!(r.kind, CheckKind::Conjecture);
    assert!(r.passed(), "{r}");
    assert_eq!(r.checked, 3001);
}

#[test]
fn v5_small_cases() {
    let v = SequenceId::Clf.values(12).unwrap();
    assert_eq!(arith::vp(&v[12], 5).unwrap(), 2);
    assert_eq!(arith::vp(&v[2], 5).unwrap(), 1);
    assert_eq!(arith::vp(&v[3], 5).unwrap(), 0);
}

proptest! {
    #[test]
    fn legendre_matches_squares(p in prop::sample::select(odd_primes_in(3, 200)), a in -500i64..500) {
        let r = a.rem_euclid(p as i64) as u64;
        let expected = if r == 0 {
            0
        } else if (1..p).any(|x| x * x % p == r) {
            1
        } else {
            -1
        };
        prop_assert_eq!(legendre_symbol(a, p).unwrap(), expected);
    }

    #[test]
    fn base_p_digits_round_trip(n in 0u64..1_000_000, p in 2u64..40) {
        let d = base_p_digits(n, p).unwrap();
        prop_assert_eq!(d.value(), n);
        prop_assert!(d.digits.iter().all(|&x| x < p));
    }

    #[test]
    fn lucas_product_random_index(p in prop::sample::select(vec![3u64, 5, 7, 11]), n in 0u64..400) {
        let values = SequenceId::Clf.values(n.max(p)).unwrap();
        let digits = base_p_digits(n, p).unwrap();
        let product = digits.digits.iter().fold(BigInt::from(1), |acc, &d| acc * &values[d as usize]);
        let m = BigInt::from(p);
        prop_assert_eq!(values[n as usize].mod_floor(&m), product.mod_floor(&m));
    }
}
