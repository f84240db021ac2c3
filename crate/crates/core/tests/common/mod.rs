#![allow(dead_code)]

use std::sync::Arc;

use arrangement_core::linalg::DenseMatrix;
use arrangement_core::numberfield::{cyclotomic_spec, FieldElement, FieldSpec, Rational};
use arrangement_core::polyring::{monomial_basis, HomogeneousForm};
use num_bigint::BigInt;
use proptest::prelude::*;

pub const CONDUCTORS: [u32; 6] = [3, 4, 5, 6, 8, 12];

pub fn field(n: u32) -> Arc<FieldSpec> {
    cyclotomic_spec(n).unwrap()
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=9).prop_map(|(a, b)| Rational::new(BigInt::from(a), BigInt::from(b)))
}

/// Mostly small coefficients, zero about a quarter of the time.
pub fn sparse_rational() -> impl Strategy<Value = Rational> {
    prop_oneof![1 => Just(Rational::from_integer(0.into())), 3 => rational()]
}

pub fn element(spec: Arc<FieldSpec>) -> impl Strategy<Value = FieldElement> {
    let phi = spec.degree();
    prop::collection::vec(rational(), phi).prop_map(move |c| FieldElement::from_coeffs(&spec, c).unwrap())
}

pub fn sparse_element(spec: Arc<FieldSpec>) -> impl Strategy<Value = FieldElement> {
    let phi = spec.degree();
    prop::collection::vec(sparse_rational(), phi).prop_map(move |c| FieldElement::from_coeffs(&spec, c).unwrap())
}

pub fn conductor() -> impl Strategy<Value = u32> {
    prop::sample::select(CONDUCTORS.to_vec())
}

/// A field with `k` random elements of it.
pub fn elements(k: usize) -> impl Strategy<Value = (Arc<FieldSpec>, Vec<FieldElement>)> {
    conductor().prop_flat_map(move |n| {
        let spec = field(n);
        (Just(spec.clone()), prop::collection::vec(element(spec), k))
    })
}

pub fn form(spec: Arc<FieldSpec>, degree: u32) -> impl Strategy<Value = HomogeneousForm> {
    let len = monomial_basis(degree).len();
    prop::collection::vec(sparse_element(spec.clone()), len)
        .prop_map(move |c| HomogeneousForm::from_vector(&spec, degree, &c).unwrap())
}

pub fn matrix(spec: Arc<FieldSpec>, rows: usize, cols: usize) -> impl Strategy<Value = DenseMatrix> {
    prop::collection::vec(prop::collection::vec(sparse_element(spec.clone()), cols), rows)
        .prop_map(move |r| DenseMatrix::from_rows(&spec, cols, r).unwrap())
}

/// A matrix of low rank: the product of random `rows × k` and `k × cols`
/// factors, so rank deficiency actually occurs.
pub fn low_rank_matrix(spec: Arc<FieldSpec>, rows: usize, cols: usize, k: usize) -> impl Strategy<Value = DenseMatrix> {
    (matrix(spec.clone(), rows, k), matrix(spec.clone(), k, cols)).prop_map(move |(a, b)| {
        let product: Vec<Vec<FieldElement>> = (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| {
                        (0..k).fold(FieldElement::zero(&spec), |acc, t| acc + a.get(i, t) * b.get(t, j))
                    })
                    .collect()
            })
            .collect();
        DenseMatrix::from_rows(&spec, cols, product).unwrap()
    })
}

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
