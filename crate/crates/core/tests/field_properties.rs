mod common;

use arrangement_core::numberfield::{cyclotomic_polynomial, euler_phi, format_element, parse_element, FieldElement, Rational};
use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn ring_axioms((spec, v) in elements(3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        let zero = FieldElement::zero(&spec);
        let one = FieldElement::one(&spec);
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(&(a + b) + c, a + &(b + c));
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert_eq!(a + &zero, a.clone());
        prop_assert_eq!(a * &one, a.clone());
        prop_assert!((a + &(-a)).is_zero());
        prop_assert_eq!(a - b, a + &(-b));
    }

    #[test]
    fn inverses((spec, v) in elements(2)) {
        let (a, b) = (&v[0], &v[1]);
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert!((a * &inv).is_one());
        prop_assert_eq!(inv.inv().unwrap(), a.clone());
        let quotient = b * &inv;
        prop_assert_eq!(&quotient * a, b.clone());
        prop_assert!(FieldElement::zero(&spec).inv().is_err());
    }

    #[test]
    fn powers((_spec, v) in elements(1), e in 0u32..6, f in 0u32..6) {
        let a = &v[0];
        prop_assert_eq!(&a.pow(e) * &a.pow(f), a.pow(e + f));
    }

    #[test]
    fn text_round_trip((spec, v) in elements(1)) {
        let text = format_element(&v[0]);
        prop_assert_eq!(parse_element(&text, &spec).unwrap(), v[0].clone());
    }
}

#[test]
fn generator_has_order_n() {
    for n in CONDUCTORS {
        let spec = field(n);
        let zeta = FieldElement::generator(&spec);
        assert!(zeta.pow(n).is_one(), "n = {n}");
        for k in 1..n {
            assert!(!zeta.pow(k).is_one(), "n = {n}, k = {k}");
        }
    }
}

#[test]
fn cyclotomic_degrees_match_phi() {
    for n in 1..=40 {
        assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n) as usize, "n = {n}");
    }
}

#[test]
fn sixth_root_relations() {
    let spec = field(6);
    let a = FieldElement::generator(&spec);
    let one = FieldElement::one(&spec);
    assert_eq!(a.pow(2), &a - &one);
    assert_eq!(a.pow(3), -one.clone());
    assert_eq!(a.pow(5), &one - &a);
    // The primitive cube root ω = a² satisfies 1 + ω + ω² = 0.
    let w = a.pow(2);
    assert!((&(&one + &w) + &w.pow(2)).is_zero());
}

#[test]
fn parse_rejects_garbage() {
    let spec = field(6);
    for bad in ["", "a +", "1/0", "(a", "b", "a^-1 +"] {
        assert!(parse_element(bad, &spec).is_err(), "{bad:?}");
    }
    let half = parse_element("1/2*a - 3", &spec).unwrap();
    let expected = FieldElement::generator(&spec).scale(&Rational::new(BigInt::from(1), BigInt::from(2)))
        - FieldElement::from_int(&spec, 3);
    assert_eq!(half, expected);
}
