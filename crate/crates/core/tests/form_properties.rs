mod common;

use arrangement_core::numberfield::{FieldElement, Rational};
use arrangement_core::polyring::{basis_len, expand_product, monomial_basis, proportionality, HomogeneousForm, Monomial, Var};
use common::*;
use proptest::prelude::*;

fn forms_pair() -> impl Strategy<Value = (HomogeneousForm, HomogeneousForm)> {
    (conductor(), 0u32..5, 0u32..5).prop_flat_map(|(n, d, e)| {
        let spec = field(n);
        (form(spec.clone(), d), form(spec, e))
    })
}

fn form_and_point() -> impl Strategy<Value = (HomogeneousForm, [FieldElement; 3])> {
    (conductor(), 1u32..6).prop_flat_map(|(n, d)| {
        let spec = field(n);
        (form(spec.clone(), d), [element(spec.clone()), element(spec.clone()), element(spec)])
    })
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn leibniz((f, g) in forms_pair()) {
        for v in Var::ALL {
            let lhs = f.multiply(&g).partial_derivative(v);
            // The derivative of a constant is zero and contributes nothing.
            let parts: Vec<HomogeneousForm> = [
                (f.degree() > 0).then(|| f.partial_derivative(v).multiply(&g)),
                (g.degree() > 0).then(|| f.multiply(&g.partial_derivative(v))),
            ]
            .into_iter()
            .flatten()
            .collect();
            match parts.split_first() {
                Some((first, rest)) => {
                    let rhs = rest.iter().fold(first.clone(), |acc, t| acc.add(t).unwrap());
                    prop_assert_eq!(lhs.coefficient_vector(), rhs.coefficient_vector());
                }
                None => prop_assert!(lhs.is_zero()),
            }
        }
    }

    #[test]
    fn euler((f, _g) in forms_pair()) {
        let spec = f.spec().clone();
        let mut sum = HomogeneousForm::zero(&spec, f.degree());
        for v in Var::ALL {
            let dv = f.partial_derivative(v);
            if f.degree() > 0 {
                sum = sum.add(&HomogeneousForm::variable(&spec, v).multiply(&dv)).unwrap();
            }
        }
        let scaled = f.scalar_mul(&FieldElement::from_int(&spec, i64::from(f.degree())));
        prop_assert_eq!(sum.coefficient_vector(), scaled.coefficient_vector());
    }

    #[test]
    fn product_is_commutative_and_evaluates((f, p) in form_and_point()) {
        let g = HomogeneousForm::linear(&p);
        prop_assert_eq!(f.multiply(&g), g.multiply(&f));
        let value = f.multiply(&g).evaluate(&p);
        prop_assert_eq!(value, &f.evaluate(&p) * &g.evaluate(&p));
    }

    #[test]
    fn vector_round_trip((f, _g) in forms_pair()) {
        let v = f.coefficient_vector();
        prop_assert_eq!(v.len(), basis_len(f.degree()));
        prop_assert_eq!(HomogeneousForm::from_vector(f.spec(), f.degree(), &v).unwrap(), f);
    }

    #[test]
    fn derivative_at_agrees_with_repeated_partials((f, p) in form_and_point(), multi in [0u32..3, 0u32..3, 0u32..3]) {
        let mut g = f.clone();
        for (v, &k) in Var::ALL.iter().zip(&multi) {
            for _ in 0..k {
                g = g.partial_derivative(*v);
            }
        }
        let expected = if multi.iter().sum::<u32>() > f.degree() {
            FieldElement::zero(f.spec())
        } else {
            g.evaluate(&p)
        };
        prop_assert_eq!(f.derivative_at(multi, &p), expected);
    }

    #[test]
    fn substitution_is_invertible((f, _g) in forms_pair()) {
        let cycled = f.substitute_variables([Var::Y, Var::Z, Var::X]);
        let back = cycled.substitute_variables([Var::Z, Var::X, Var::Y]);
        prop_assert_eq!(back, f);
    }

    #[test]
    fn vanishing_order_of_power_of_line((f, p) in form_and_point(), k in 1u32..4) {
        // A power of a line through p vanishes there to order exactly k.
        prop_assume!(p.iter().any(|c| !c.is_zero()));
        let spec = f.spec().clone();
        let q = [p[1].clone(), -p[0].clone(), FieldElement::zero(&spec)];
        let r = [FieldElement::zero(&spec), p[2].clone(), -p[1].clone()];
        let l = if q.iter().any(|c| !c.is_zero()) { HomogeneousForm::linear(&q) } else { HomogeneousForm::linear(&r) };
        let power = expand_product(&spec, &vec![l; k as usize]);
        prop_assert!(power.vanishes_to_order(&p, k));
        prop_assert_eq!(power.order_at(&p), Some(k));
    }
}

#[test]
fn graded_lex_basis() {
    let b = monomial_basis(2);
    let expected = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];
    assert_eq!(b.iter().map(|m| m.exponents()).collect::<Vec<_>>(), expected);
    for d in 0..12 {
        let basis = monomial_basis(d);
        assert_eq!(basis.len(), ((d + 1) * (d + 2) / 2) as usize);
        for (i, m) in basis.iter().enumerate() {
            assert_eq!(m.index(), i);
        }
    }
}

#[test]
fn proportional_forms() {
    let spec = field(6);
    let a = FieldElement::generator(&spec);
    let f = HomogeneousForm::from_terms(
        &spec,
        2,
        [(Monomial::new(2, 0, 0), a.clone()), (Monomial::new(0, 1, 1), FieldElement::one(&spec))],
    )
    .unwrap();
    let c = FieldElement::from_rational(&spec, Rational::new(3.into(), 7.into())) * &a;
    let g = f.scalar_mul(&c);
    assert_eq!(proportionality(&f, &g), Some(c));
    let h = g.add(&HomogeneousForm::monomial(Monomial::new(1, 1, 0), FieldElement::one(&spec))).unwrap();
    assert_eq!(proportionality(&f, &h), None);
}
