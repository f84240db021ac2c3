mod common;

use std::sync::Arc;

use arrangement_core::linalg::{
    contains, in_span, nullspace, nullspace_fraction_free, rank, rref, rref_fraction_free, subspace_sum, DenseMatrix,
    Subspace,
};
use arrangement_core::numberfield::{FieldElement, FieldSpec};
use common::*;
use proptest::prelude::*;

/// Determinant by cofactor expansion along the first row.
fn det(m: &[Vec<FieldElement>], spec: &Arc<FieldSpec>) -> FieldElement {
    let n = m.len();
    if n == 0 {
        return FieldElement::one(spec);
    }
    let mut acc = FieldElement::zero(spec);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<FieldElement>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * &det(&minor, spec);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Largest k with a nonzero k × k minor.
fn minor_rank(m: &DenseMatrix) -> usize {
    let spec = m.spec().clone();
    for k in (1..=m.rows().min(m.cols())).rev() {
        for rows in subsets(m.rows(), k) {
            for cols in subsets(m.cols(), k) {
                let sub: Vec<Vec<FieldElement>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| m.get(i, j).clone()).collect()).collect();
                if !det(&sub, &spec).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

fn small_matrix() -> impl Strategy<Value = DenseMatrix> {
    (conductor(), 1usize..=5, 1usize..=5, 1usize..=5).prop_flat_map(|(n, r, c, k)| {
        let spec = field(n);
        prop_oneof![matrix(spec.clone(), r, c), low_rank_matrix(spec, r, c, k.min(r).min(c))]
    })
}

fn tall_matrix() -> impl Strategy<Value = DenseMatrix> {
    (prop::sample::select(vec![3u32, 6, 12]), 50usize..70, 4usize..9, 1usize..6)
        .prop_flat_map(|(n, r, c, k)| low_rank_matrix(field(n), r, c, k.min(c)))
}

fn stacked(a: &Subspace, b: &Subspace) -> DenseMatrix {
    let rows: Vec<Vec<FieldElement>> = a.basis_vectors().chain(b.basis_vectors()).map(<[_]>::to_vec).collect();
    DenseMatrix::from_rows(a.spec(), a.ambient_dim(), rows).unwrap()
}

proptest! {
    #![proptest_config(config(150))]

    #[test]
    fn rank_matches_minor_oracle(m in small_matrix()) {
        prop_assert_eq!(rank(&m), minor_rank(&m));
    }

    #[test]
    fn rank_of_transpose(m in small_matrix()) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rank_nullity(m in small_matrix()) {
        let ns = nullspace(&m);
        prop_assert_eq!(rank(&m) + ns.dim(), m.cols());
        for v in ns.basis_vectors() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(FieldElement::is_zero));
        }
    }

    #[test]
    fn rref_is_idempotent(m in small_matrix()) {
        let (r, rk) = rref(&m);
        let (again, rk2) = rref(r.basis());
        prop_assert_eq!(rk, rk2);
        prop_assert_eq!(&again, &r);
        for (i, &p) in r.pivots().iter().enumerate() {
            for k in 0..rk {
                let entry = r.basis().get(k, p);
                let expected_unit = if k == i { entry.is_one() } else { entry.is_zero() };
                prop_assert!(expected_unit);
            }
        }
        prop_assert!(r.pivots().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn modular_and_exact_nullspaces_agree(m in small_matrix()) {
        prop_assert_eq!(nullspace(&m), nullspace_fraction_free(&m));
    }

    #[test]
    fn rows_lie_in_row_space(m in small_matrix()) {
        let (r, _) = rref(&m);
        for row in m.row_iter() {
            prop_assert!(in_span(&r, row).unwrap().is_some());
        }
    }

    #[test]
    fn sum_dimension_matches_stacked_rank(a in small_matrix(), b_rows in 1usize..4) {
        let spec = a.spec().clone();
        let cols = a.cols();
        let b: Vec<Vec<FieldElement>> = (0..b_rows)
            .map(|i| (0..cols).map(|j| FieldElement::from_int(&spec, ((i * 7 + j * 3) % 5) as i64 - 2)).collect())
            .collect();
        let b = DenseMatrix::from_rows(&spec, cols, b).unwrap();
        let (u, _) = rref(&a);
        let (w, _) = rref(&b);
        let sum = subspace_sum(&[&u, &w]).unwrap();
        prop_assert_eq!(sum.dim(), minor_rank(&stacked(&u, &w)));
        prop_assert!(contains(&sum, &u).unwrap() && contains(&sum, &w).unwrap());
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn tall_row_space_matches_exact_elimination(m in tall_matrix()) {
        let (r, rk) = rref(&m);
        prop_assert_eq!(&r, &rref_fraction_free(&m));
        prop_assert_eq!(rk + nullspace(&m).dim(), m.cols());
    }
}

#[test]
fn minor_oracle_on_known_matrices() {
    let spec = field(6);
    let id = DenseMatrix::identity(&spec, 4);
    assert_eq!(minor_rank(&id), 4);
    assert_eq!(minor_rank(&DenseMatrix::zeros(&spec, 3, 2)), 0);
}
