//! Exact dense linear algebra over `Q(ζ_n)`: row reduction, nullspaces and
//! subspace operations.
//!
//! Subspaces are always stored by their reduced row echelon basis, so equal
//! subspaces have identical representations.

mod kernel;
mod modular;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numberfield::{check_specs, FieldElement, FieldSpec};

#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    spec: Arc<FieldSpec>,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl DenseMatrix {
    pub fn zeros(spec: &Arc<FieldSpec>, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            spec: spec.clone(),
            rows,
            cols,
            entries: vec![FieldElement::zero(spec); rows * cols],
        }
    }

    pub fn identity(spec: &Arc<FieldSpec>, n: usize) -> Self {
        let mut m = Self::zeros(spec, n, n);
        for i in 0..n {
            m.entries[i * n + i] = FieldElement::one(spec);
        }
        m
    }

    /// Builds a matrix from rows of length `cols`.
    pub fn from_rows(spec: &Arc<FieldSpec>, cols: usize, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: row.len(),
                });
            }
            for e in &row {
                check_specs(spec, e.spec())?;
            }
            entries.extend(row);
        }
        Ok(DenseMatrix {
            spec: spec.clone(),
            rows: n,
            cols,
            entries,
        })
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: FieldElement) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[FieldElement]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.spec, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// `self · v`.
    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        Ok(self.row_iter().map(|row| dot(&self.spec, row, v)).collect())
    }

    /// Entries as element strings, for debugging dumps.
    pub fn to_string_grid(&self) -> Vec<Vec<String>> {
        self.row_iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect())
            .collect()
    }
}

impl std::fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DenseMatrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.to_string_grid()).finish()
    }
}

fn dot(spec: &Arc<FieldSpec>, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(FieldElement::zero(spec), |acc, (x, y)| acc + x * y)
}

/// A subspace of `K^ambient`, stored by its reduced row echelon basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: DenseMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(spec: &Arc<FieldSpec>, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: DenseMatrix::zeros(spec, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(spec: &Arc<FieldSpec>, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: DenseMatrix::identity(spec, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// The span of arbitrary vectors of length `ambient`.
    pub fn span(spec: &Arc<FieldSpec>, ambient: usize, vectors: Vec<Vec<FieldElement>>) -> Result<Self> {
        let m = DenseMatrix::from_rows(spec, ambient, vectors)?;
        Ok(rref(&m).0)
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        self.basis.spec()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn basis(&self) -> &DenseMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[FieldElement]> {
        self.basis.row_iter()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

fn rref_rows(spec: &Arc<FieldSpec>, cols: usize, rows: &[&[FieldElement]]) -> Subspace {
    let int_rows = kernel::integral_rows(rows, spec.degree());
    let reduced = kernel::reduce(spec, cols, int_rows);
    let field_rows = reduced.to_field_rows(spec);
    let n = field_rows.len();
    Subspace {
        ambient: cols,
        basis: DenseMatrix {
            spec: spec.clone(),
            rows: n,
            cols,
            entries: field_rows.into_iter().flatten().collect(),
        },
        pivots: reduced.pivots,
    }
}

/// Above this many rows the row space is found as the annihilator of its
/// annihilator, which keeps exact elimination down to a basis.
const DIRECT_ROWS: usize = 48;

/// Row space in canonical RREF.
///
/// For tall inputs, `K = ker(rows)` and then `ker(K)` are computed with the
/// verified multimodular kernel. `rowspace ⊆ ker(K)` holds exactly, and both
/// have dimension `cols − |K|`, so they are equal.
fn row_space(spec: &Arc<FieldSpec>, cols: usize, rows: &[&[FieldElement]]) -> Subspace {
    if rows.len() <= DIRECT_ROWS {
        return rref_rows(spec, cols, rows);
    }
    let int_rows = kernel::integral_rows(rows, spec.degree());
    let Some((rank, annihilator)) = modular::nullspace_multimodular(spec, cols, &int_rows) else {
        return rref_rows(spec, cols, rows);
    };
    if rank + annihilator.len() != cols {
        return rref_rows(spec, cols, rows);
    }
    if annihilator.is_empty() {
        return Subspace::full(spec, cols);
    }
    let refs: Vec<&[FieldElement]> = annihilator.iter().map(Vec::as_slice).collect();
    let int_ann = kernel::integral_rows(&refs, spec.degree());
    match modular::nullspace_multimodular(spec, cols, &int_ann) {
        Some((ann_rank, basis)) if ann_rank == annihilator.len() && basis.len() == rank => {
            let refs: Vec<&[FieldElement]> = basis.iter().map(Vec::as_slice).collect();
            rref_rows(spec, cols, &refs)
        }
        _ => rref_rows(spec, cols, rows),
    }
}

/// Reduced row echelon form of `m` (as the row space) and the rank.
pub fn rref(m: &DenseMatrix) -> (Subspace, usize) {
    let rows: Vec<&[FieldElement]> = m.row_iter().collect();
    let s = row_space(&m.spec, m.cols, &rows);
    let rank = s.dim();
    (s, rank)
}

/// RREF by exact fraction-free elimination only.
pub fn rref_fraction_free(m: &DenseMatrix) -> Subspace {
    let rows: Vec<&[FieldElement]> = m.row_iter().collect();
    rref_rows(&m.spec, m.cols, &rows)
}

pub fn rank(m: &DenseMatrix) -> usize {
    rref(m).1
}

/// Basis of `{v : m · v = 0}`, computed modulo primes and verified exactly.
/// Falls back to [`nullspace_fraction_free`] if verification does not succeed.
pub fn nullspace(m: &DenseMatrix) -> Subspace {
    let rows: Vec<&[FieldElement]> = m.row_iter().collect();
    let int_rows = kernel::integral_rows(&rows, m.spec.degree());
    match modular::nullspace_multimodular(&m.spec, m.cols, &int_rows) {
        Some((rank, vectors)) => {
            let refs: Vec<&[FieldElement]> = vectors.iter().map(Vec::as_slice).collect();
            let ns = rref_rows(&m.spec, m.cols, &refs);
            assert_eq!(rank + ns.dim(), m.cols, "rank-nullity violated");
            ns
        }
        None => {
            log::warn!("multimodular nullspace did not verify; using exact elimination");
            nullspace_fraction_free(m)
        }
    }
}

/// Nullspace read off the exact fraction-free RREF.
pub fn nullspace_fraction_free(m: &DenseMatrix) -> Subspace {
    let r = rref_fraction_free(m);
    let rank = r.dim();
    nullspace_of_rref(&r, rank, m.cols)
}

fn nullspace_of_rref(r: &Subspace, rank: usize, cols: usize) -> Subspace {
    let spec = r.spec().clone();
    let mut is_pivot = vec![false; cols];
    for &p in r.pivots() {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<FieldElement>> = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![FieldElement::zero(&spec); cols];
            v[f] = FieldElement::one(&spec);
            for (i, &p) in r.pivots().iter().enumerate() {
                v[p] = -r.basis().get(i, f);
            }
            v
        })
        .collect();
    let refs: Vec<&[FieldElement]> = vectors.iter().map(Vec::as_slice).collect();
    let ns = rref_rows(&spec, cols, &refs);
    assert_eq!(rank + ns.dim(), cols, "rank-nullity violated");
    ns
}

/// Coordinates of `v` in the basis of `s`, or `None` if `v ∉ s`.
pub fn in_span(s: &Subspace, v: &[FieldElement]) -> Result<Option<Vec<FieldElement>>> {
    if v.len() != s.ambient {
        return Err(Error::DimensionMismatch {
            expected: s.ambient,
            actual: v.len(),
        });
    }
    let residual = reduce_against(s, v);
    if residual.iter().all(FieldElement::is_zero) {
        Ok(Some(s.pivots.iter().map(|&p| v[p].clone()).collect()))
    } else {
        Ok(None)
    }
}

/// Normal form of `v` modulo `s`: `v − Σ v[pivot_i] · basis_i`. It is zero
/// exactly when `v ∈ s` and vanishes on every pivot column.
pub fn reduce_against(s: &Subspace, v: &[FieldElement]) -> Vec<FieldElement> {
    let mut out = v.to_vec();
    for (i, &p) in s.pivots.iter().enumerate() {
        let c = out[p].clone();
        if c.is_zero() {
            continue;
        }
        for (o, b) in out.iter_mut().zip(s.basis.row(i)) {
            if !b.is_zero() {
                *o = &*o - &(&c * b);
            }
        }
    }
    out
}

fn check_ambient(spaces: &[&Subspace]) -> Result<()> {
    if let Some(first) = spaces.first() {
        for s in spaces {
            if s.ambient != first.ambient {
                return Err(Error::DimensionMismatch {
                    expected: first.ambient,
                    actual: s.ambient,
                });
            }
            check_specs(first.spec(), s.spec())?;
        }
    }
    Ok(())
}

/// The sum of subspaces (RREF of the stacked bases).
pub fn subspace_sum(spaces: &[&Subspace]) -> Result<Subspace> {
    check_ambient(spaces)?;
    let first = spaces.first().ok_or_else(|| Error::InvalidParameter("empty subspace list".into()))?;
    let rows: Vec<&[FieldElement]> = spaces.iter().flat_map(|s| s.basis_vectors()).collect();
    Ok(row_space(first.spec(), first.ambient, &rows))
}

/// True iff `t ⊆ s`.
pub fn contains(s: &Subspace, t: &Subspace) -> Result<bool> {
    check_ambient(&[s, t])?;
    for v in t.basis_vectors() {
        if in_span(s, v)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Debug dump: `[[ "elem", ... ], ...]`.
#[derive(Serialize)]
pub struct MatrixDump {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl From<&DenseMatrix> for MatrixDump {
    fn from(m: &DenseMatrix) -> Self {
        MatrixDump {
            rows: m.rows,
            cols: m.cols,
            entries: m.to_string_grid(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::{cyclotomic_spec, parse_element};

    fn q6() -> Arc<FieldSpec> {
        cyclotomic_spec(6).unwrap()
    }

    fn mat(spec: &Arc<FieldSpec>, rows: &[&[&str]]) -> DenseMatrix {
        let cols = rows[0].len();
        DenseMatrix::from_rows(
            spec,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|s| parse_element(s, spec).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    fn unit(spec: &Arc<FieldSpec>, n: usize, i: usize) -> Vec<FieldElement> {
        let mut v = vec![FieldElement::zero(spec); n];
        v[i] = FieldElement::one(spec);
        v
    }

    #[test]
    fn identity_has_full_rank() {
        let k = q6();
        assert_eq!(rank(&DenseMatrix::identity(&k, 3)), 3);
        assert_eq!(nullspace(&DenseMatrix::identity(&k, 3)).dim(), 0);
    }

    #[test]
    fn singular_matrix_over_q6() {
        let k = q6();
        let m = mat(&k, &[&["a", "1"], &["1", "1 - a"]]);
        let (r, rk) = rref(&m);
        assert_eq!(rk, 1);
        // a · (1 - a) = 1, so the row space is spanned by (1, 1 - a).
        assert_eq!(r.basis().row(0), mat(&k, &[&["1", "1 - a"]]).row(0));
    }

    #[test]
    fn zero_matrix_nullspace() {
        let k = q6();
        let z = DenseMatrix::zeros(&k, 2, 4);
        assert_eq!(rank(&z), 0);
        let ns = nullspace(&z);
        assert_eq!(ns.dim(), 4);
        assert_eq!(ns, Subspace::full(&k, 4));
    }

    #[test]
    fn rref_shape() {
        let k = q6();
        let m = mat(
            &k,
            &[
                &["0", "2", "4a", "1"],
                &["3", "1", "0", "a"],
                &["3", "5", "8a", "a + 2"],
            ],
        );
        let (r, rk) = rref(&m);
        assert_eq!(rk, 2);
        assert_eq!(r.pivots(), &[0, 1]);
        assert!(r.basis().get(0, 0).is_one() && r.basis().get(1, 1).is_one());
        assert!(r.basis().get(0, 1).is_zero() && r.basis().get(1, 0).is_zero());
        let ns = nullspace(&m);
        for v in ns.basis_vectors() {
            assert!(m.mul_vec(v).unwrap().iter().all(FieldElement::is_zero));
        }
    }

    #[test]
    fn membership() {
        let k = q6();
        let s = Subspace::span(&k, 3, vec![unit(&k, 3, 0), unit(&k, 3, 1)]).unwrap();
        let coords = in_span(&s, s.basis().row(1)).unwrap().unwrap();
        assert!(coords[0].is_zero() && coords[1].is_one());
        assert!(in_span(&s, &unit(&k, 3, 2)).unwrap().is_none());
        assert!(in_span(&s, &unit(&k, 4, 2)).is_err());
    }

    #[test]
    fn sums_and_containment() {
        let k = q6();
        let e1 = Subspace::span(&k, 3, vec![unit(&k, 3, 0)]).unwrap();
        let e2 = Subspace::span(&k, 3, vec![unit(&k, 3, 1)]).unwrap();
        assert_eq!(subspace_sum(&[&e1, &e1]).unwrap(), e1);
        let s = subspace_sum(&[&e1, &e2]).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(contains(&s, &e1).unwrap());
        assert!(!contains(&e1, &s).unwrap());
        let other = Subspace::zero(&k, 4);
        assert!(subspace_sum(&[&e1, &other]).is_err());
    }
}
