//! Graded pieces of symbolic and ordinary powers of ideals of points, and
//! witness-based containment checks `I^(m) ⊆ I^r`.
//!
//! A degree-`d` piece is a subspace of the degree-`d` forms in
//! [`monomial_basis`](crate::polyring::monomial_basis) coordinates. Symbolic
//! pieces come from interpolation conditions at fat points. Ordinary pieces
//! use `(I^r)_d = Σ I_{d_1} ⋯ I_{d_r}` over `d_1 + ⋯ + d_r = d`: any degree-`d`
//! element of `I^r` is a sum of terms `h g_1 ⋯ g_r` with `g_i ∈ I`, and `h` can
//! be absorbed into `g_1`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ProjPoint, SingularLocus};
use crate::linalg::{in_span, nullspace, reduce_against, subspace_sum, DenseMatrix, Subspace};
use crate::numberfield::{FieldElement, FieldSpec};
use crate::polyring::{basis_len, derivative_functional, derivative_multi_indices, HomogeneousForm, TermRecord};

/// Points with multiplicities. `I^(m)` of a reduced scheme is the scheme
/// with every multiplicity multiplied by `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FatPointScheme {
    spec: Arc<FieldSpec>,
    name: String,
    points: Vec<(ProjPoint, u32)>,
}

impl FatPointScheme {
    pub fn new(spec: &Arc<FieldSpec>, name: &str, points: Vec<(ProjPoint, u32)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (p, m) in &points {
            p.coords()[0].check_same_field(&FieldElement::zero(spec))?;
            if *m == 0 {
                return Err(Error::InvalidParameter("point multiplicity must be at least 1".into()));
            }
            if !seen.insert(p.clone()) {
                return Err(Error::InvalidParameter(format!("repeated point {p:?}")));
            }
        }
        Ok(FatPointScheme {
            spec: spec.clone(),
            name: name.to_string(),
            points,
        })
    }

    /// Every point with multiplicity 1.
    pub fn reduced(spec: &Arc<FieldSpec>, name: &str, points: Vec<ProjPoint>) -> Result<Self> {
        Self::new(spec, name, points.into_iter().map(|p| (p, 1)).collect())
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn points(&self) -> &[(ProjPoint, u32)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.points.iter().all(|(_, m)| *m == 1)
    }

    /// The scheme of `I^(m)`.
    pub fn scaled(&self, m: u32) -> Self {
        FatPointScheme {
            spec: self.spec.clone(),
            name: self.name.clone(),
            points: self.points.iter().map(|(p, k)| (p.clone(), k * m)).collect(),
        }
    }

    /// Number of conditions imposed on forms of large degree.
    pub fn condition_count(&self) -> usize {
        self.points.iter().map(|(_, m)| (m * (m + 1) / 2) as usize).sum()
    }

    fn require_reduced(&self) -> Result<()> {
        if self.is_reduced() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("scheme {} is not reduced", self.name)))
        }
    }
}

/// Reduced schemes on the points of a locus: all of them, or only those of
/// one multiplicity.
pub fn locus_scheme(locus: &SingularLocus, spec: &Arc<FieldSpec>, name: &str, multiplicity: Option<usize>) -> Result<FatPointScheme> {
    let points = locus
        .points()
        .iter()
        .filter(|p| multiplicity.is_none_or(|k| p.multiplicity() == k))
        .map(|p| p.point.clone())
        .collect();
    FatPointScheme::reduced(spec, name, points)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "exponent")]
pub enum PieceKind {
    Symbolic(u32),
    Ordinary(u32),
}

/// The degree-`d` part of a homogeneous ideal.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedPiece {
    pub degree: u32,
    pub kind: PieceKind,
    pub subspace: Subspace,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.subspace.is_zero()
    }

    pub fn forms(&self) -> Vec<HomogeneousForm> {
        self.subspace
            .basis_vectors()
            .map(|v| HomogeneousForm::from_vector(self.subspace.spec(), self.degree, v).expect("basis length"))
            .collect()
    }

    pub fn contains_form(&self, f: &HomogeneousForm) -> Result<bool> {
        if f.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: f.degree(),
            });
        }
        Ok(in_span(&self.subspace, &f.coefficient_vector())?.is_some())
    }
}

/// Interpolation conditions for vanishing to order `m_i` at each point: the
/// partials of order `m_i - 1` (lower orders follow by Euler's formula). If
/// `m_i - 1 > d` only forms that are zero qualify, which the order-`d`
/// partials enforce.
pub fn condition_matrix(s: &FatPointScheme, d: u32) -> DenseMatrix {
    let rows: Vec<Vec<FieldElement>> = s
        .points
        .par_iter()
        .flat_map_iter(|(p, m)| {
            let order = (m - 1).min(d);
            derivative_multi_indices(order)
                .into_iter()
                .map(move |multi| derivative_functional(d, multi, p.coords()))
        })
        .collect();
    DenseMatrix::from_rows(&s.spec, basis_len(d), rows).expect("rows have basis length")
}

/// `I_d` for the ideal of `s`, checked point by point after solving.
pub fn fat_graded_piece(s: &FatPointScheme, d: u32) -> GradedPiece {
    let subspace = if s.is_empty() {
        Subspace::full(&s.spec, basis_len(d))
    } else {
        nullspace(&condition_matrix(s, d))
    };
    let piece = GradedPiece {
        degree: d,
        kind: PieceKind::Symbolic(s.points.iter().map(|(_, m)| *m).max().unwrap_or(1)),
        subspace,
    };
    let forms = piece.forms();
    let ok = forms
        .par_iter()
        .all(|f| s.points.iter().all(|(p, m)| f.vanishes_to_order(p.coords(), *m)));
    assert!(ok, "interpolation basis fails a vanishing condition");
    piece
}

/// Least degree with a nonzero piece.
pub fn alpha(s: &FatPointScheme) -> Result<u32> {
    if s.is_empty() {
        return Err(Error::InvalidParameter("alpha of an empty scheme".into()));
    }
    Ok((1..)
        .find(|&d| !fat_graded_piece(s, d).is_zero())
        .expect("some degree has a nonzero piece"))
}

/// Nondecreasing sequences of `parts` positive integers `>= min` summing to
/// `total`.
pub fn compositions(total: u32, parts: u32, min: u32) -> Vec<Vec<u32>> {
    fn rec(total: u32, parts: u32, min: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let mut k = min;
        while k * parts <= total {
            prefix.push(k);
            rec(total - k, parts - 1, k, prefix, out);
            prefix.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(total, parts, min.max(1), &mut Vec::new(), &mut out);
    }
    out
}

/// `(I^r)_d` for a reduced scheme.
pub fn ordinary_power_piece(s: &FatPointScheme, r: u32, d: u32) -> Result<GradedPiece> {
    s.require_reduced()?;
    if r == 0 {
        return Err(Error::InvalidParameter("power r must be at least 1".into()));
    }
    let ambient = basis_len(d);
    let zero = |kind| GradedPiece {
        degree: d,
        kind,
        subspace: Subspace::zero(&s.spec, ambient),
    };
    if r == 1 {
        let mut piece = fat_graded_piece(s, d);
        piece.kind = PieceKind::Ordinary(1);
        return Ok(piece);
    }
    if s.is_empty() {
        let mut piece = fat_graded_piece(s, d);
        piece.kind = PieceKind::Ordinary(r);
        return Ok(piece);
    }
    let a = alpha(s)?;
    if d < r * a {
        return Ok(zero(PieceKind::Ordinary(r)));
    }
    let splits = compositions(d, r, a);
    let needed: BTreeSet<u32> = splits.iter().flatten().copied().collect();
    let factor_forms: BTreeMap<u32, Vec<HomogeneousForm>> = needed
        .into_iter()
        .map(|k| {
            let forms = fat_graded_piece(s, k).forms().iter().map(HomogeneousForm::primitive_part).collect();
            (k, forms)
        })
        .collect();
    let mut vectors: Vec<Vec<FieldElement>> = Vec::new();
    for split in &splits {
        let parts: Vec<&Vec<HomogeneousForm>> = split.iter().map(|k| &factor_forms[k]).collect();
        if parts.iter().any(|p| p.is_empty()) {
            continue;
        }
        // Index tuples, nondecreasing across parts of equal degree.
        let mut tuples: Vec<Vec<usize>> = (0..parts[0].len()).map(|i| vec![i]).collect();
        for (i, part) in parts.iter().enumerate().skip(1) {
            let same = split[i] == split[i - 1];
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    let from = if same { *t.last().expect("nonempty") } else { 0 };
                    (from..part.len()).map(move |j| {
                        let mut next = t.clone();
                        next.push(j);
                        next
                    })
                })
                .collect();
        }
        let products: Vec<HomogeneousForm> = tuples
            .par_iter()
            .map(|t| {
                let factors: Vec<HomogeneousForm> =
                    t.iter().zip(&parts).map(|(&j, part)| part[j].clone()).collect();
                crate::polyring::expand_product(&s.spec, &factors)
            })
            .collect();
        vectors.extend(products.par_iter().map(HomogeneousForm::coefficient_vector).collect::<Vec<_>>());
    }
    let span = Subspace::span(&s.spec, ambient, vectors)?;
    Ok(GradedPiece {
        degree: d,
        kind: PieceKind::Ordinary(r),
        subspace: span,
    })
}

/// How a form vanishes at one point of a scheme.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCertificate {
    pub index: usize,
    pub point: [String; 3],
    pub required_order: u32,
    pub satisfied: bool,
    /// The first partial of order below the requirement that does not vanish.
    pub failing_derivative: Option<[u32; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub member: bool,
    pub certificates: Vec<PointCertificate>,
}

/// Whether `f` vanishes to order `m · mult(P)` at every point `P` of `s`.
pub fn symbolic_membership(f: &HomogeneousForm, s: &FatPointScheme, m: u32) -> Membership {
    let certificates: Vec<PointCertificate> = s
        .points
        .par_iter()
        .enumerate()
        .map(|(index, (p, k))| {
            let required = m * k;
            let failing = f.first_nonvanishing_derivative(p.coords(), required);
            PointCertificate {
                index,
                point: p.to_strings(),
                required_order: required,
                satisfied: failing.is_none(),
                failing_derivative: failing,
            }
        })
        .collect();
    Membership {
        member: certificates.iter().all(|c| c.satisfied),
        certificates,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The witness lies in `I^(m)` but not in `I^r`.
    NonContainment,
    /// The witness is not in `I^(m)` and certifies nothing.
    NotSymbolic,
    /// The witness is in `(I^r)_d` and certifies nothing.
    InOrdinaryPower,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::NonContainment => "non-containment",
            Verdict::NotSymbolic => "not-symbolic",
            Verdict::InOrdinaryPower => "in-ordinary-power",
        })
    }
}

impl std::str::FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "non-containment" => Ok(Verdict::NonContainment),
            "not-symbolic" => Ok(Verdict::NotSymbolic),
            "in-ordinary-power" => Ok(Verdict::InOrdinaryPower),
            other => Err(Error::InvalidParameter(format!("unknown verdict {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct CheckOptions {
    /// Also compute `dim I^(m)_d`, which needs the full interpolation solve.
    pub symbolic_dimension: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub scheme: String,
    pub points: usize,
    pub m: u32,
    pub r: u32,
    pub degree: u32,
    pub witness: Vec<TermRecord>,
    pub symbolic_membership: bool,
    pub certificates: Vec<PointCertificate>,
    pub ordinary_membership: bool,
    pub symbolic_dim: Option<usize>,
    pub ordinary_dim: usize,
    pub verdict: Verdict,
    pub reasoning: String,
}

/// Tests a witness for `I^(m) ⊄ I^r`. Non-membership is decided in the
/// witness degree, which suffices because `I^r` is homogeneous.
pub fn check_noncontainment(
    s: &FatPointScheme,
    m: u32,
    r: u32,
    witness: &HomogeneousForm,
    options: &CheckOptions,
) -> Result<WitnessReport> {
    if witness.is_zero() {
        return Err(Error::InvalidParameter("witness is the zero form".into()));
    }
    let d = witness.degree();
    let membership = symbolic_membership(witness, s, m);
    let ordinary = ordinary_power_piece(s, r, d)?;
    let ordinary_membership = ordinary.contains_form(witness)?;
    let symbolic_dim = options
        .symbolic_dimension
        .then(|| fat_graded_piece(&s.scaled(m), d).dim());
    let verdict = match (membership.member, ordinary_membership) {
        (true, false) => Verdict::NonContainment,
        (false, _) => Verdict::NotSymbolic,
        (true, true) => Verdict::InOrdinaryPower,
    };
    let reasoning = match verdict {
        Verdict::NonContainment => format!(
            "witness vanishes to the required order at all {} points, and its coefficient vector is outside \
             the {}-dimensional space (I^{r})_{d}; since I^{r} is homogeneous, the witness is not in I^{r}",
            s.len(),
            ordinary.dim()
        ),
        Verdict::NotSymbolic => {
            let bad = membership.certificates.iter().filter(|c| !c.satisfied).count();
            format!("witness fails the vanishing order at {bad} of {} points", s.len())
        }
        Verdict::InOrdinaryPower => format!("witness lies in (I^{r})_{d}"),
    };
    Ok(WitnessReport {
        scheme: s.name.clone(),
        points: s.len(),
        m,
        r,
        degree: d,
        witness: witness.to_records(),
        symbolic_membership: membership.member,
        certificates: membership.certificates,
        ordinary_membership,
        symbolic_dim,
        ordinary_dim: ordinary.dim(),
        verdict,
        reasoning,
    })
}

/// Whether `I^(m)_d ⊆ (I^r)_d`.
pub fn graded_containment(s: &FatPointScheme, m: u32, r: u32, d: u32) -> Result<bool> {
    s.require_reduced()?;
    let symbolic = fat_graded_piece(&s.scaled(m), d);
    if symbolic.is_zero() {
        return Ok(true);
    }
    let ordinary = ordinary_power_piece(s, r, d)?;
    crate::linalg::contains(&ordinary.subspace, &symbolic.subspace)
}

/// Elements of `I^(m)_d` spanning a complement of `(I^r)_d ∩ I^(m)_d`.
pub fn witness_search(s: &FatPointScheme, m: u32, r: u32, d: u32) -> Result<Vec<HomogeneousForm>> {
    s.require_reduced()?;
    let symbolic = fat_graded_piece(&s.scaled(m), d);
    if symbolic.is_zero() {
        return Ok(Vec::new());
    }
    let ordinary = ordinary_power_piece(s, r, d)?;
    complement_in(&symbolic, &ordinary.subspace)
}

/// Basis vectors of `piece` whose images modulo `base` are independent.
fn complement_in(piece: &GradedPiece, base: &Subspace) -> Result<Vec<HomogeneousForm>> {
    let spec = base.spec().clone();
    let mut chosen = Vec::new();
    let mut residuals: Vec<Vec<FieldElement>> = Vec::new();
    let mut span = Subspace::zero(&spec, base.ambient_dim());
    for (v, f) in piece.subspace.basis_vectors().zip(piece.forms()) {
        let res = reduce_against(base, v);
        if res.iter().all(FieldElement::is_zero) || in_span(&span, &res)?.is_some() {
            continue;
        }
        residuals.push(res);
        span = Subspace::span(&spec, base.ambient_dim(), residuals.clone())?;
        chosen.push(f);
    }
    Ok(chosen)
}

/// Whether `f` lies in `base + span(extra)`.
pub fn in_sum_span(f: &HomogeneousForm, base: &Subspace, extra: &[HomogeneousForm]) -> Result<bool> {
    let extra_space = Subspace::span(
        base.spec(),
        base.ambient_dim(),
        extra.iter().map(HomogeneousForm::coefficient_vector).collect(),
    )?;
    let sum = subspace_sum(&[base, &extra_space])?;
    Ok(in_span(&sum, &f.coefficient_vector())?.is_some())
}

/// Indices of the points of `s` where `f` vanishes.
pub fn zeros_among(f: &HomogeneousForm, s: &FatPointScheme) -> Vec<usize> {
    s.points
        .iter()
        .enumerate()
        .filter(|(_, (p, _))| f.evaluate(p.coords()).is_zero())
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::cyclotomic_spec;

    fn pt(spec: &Arc<FieldSpec>, c: [i64; 3]) -> ProjPoint {
        ProjPoint::new(c.map(|v| FieldElement::from_int(spec, v))).unwrap()
    }

    #[test]
    fn single_point_pieces() {
        let k = cyclotomic_spec(6).unwrap();
        let s = FatPointScheme::reduced(&k, "p", vec![pt(&k, [1, 2, 3])]).unwrap();
        assert_eq!(fat_graded_piece(&s, 1).dim(), 2);
        assert_eq!(fat_graded_piece(&s.scaled(2), 1).dim(), 0);
        assert_eq!(fat_graded_piece(&s.scaled(2), 2).dim(), 3);
        assert_eq!(fat_graded_piece(&s.scaled(5), 3).dim(), 0);
        assert_eq!(alpha(&s).unwrap(), 1);
    }

    #[test]
    fn two_points_alpha_is_one() {
        let k = cyclotomic_spec(6).unwrap();
        let s = FatPointScheme::reduced(&k, "pq", vec![pt(&k, [1, 0, 0]), pt(&k, [0, 1, 0])]).unwrap();
        assert_eq!(alpha(&s).unwrap(), 1);
        let line = fat_graded_piece(&s, 1).forms();
        assert_eq!(line.len(), 1);
        assert_eq!(line[0], HomogeneousForm::variable(&k, crate::polyring::Var::Z));
    }

    #[test]
    fn repeated_point_rejected() {
        let k = cyclotomic_spec(6).unwrap();
        assert!(FatPointScheme::reduced(&k, "pp", vec![pt(&k, [1, 1, 0]), pt(&k, [2, 2, 0])]).is_err());
    }

    #[test]
    fn compositions_are_sorted_and_complete() {
        assert_eq!(compositions(21, 2, 9), vec![vec![9, 12], vec![10, 11]]);
        assert_eq!(compositions(18, 2, 8), vec![vec![8, 10], vec![9, 9]]);
        assert_eq!(compositions(5, 3, 1), vec![vec![1, 1, 3], vec![1, 2, 2]]);
        assert!(compositions(3, 2, 2).is_empty());
    }

    #[test]
    fn coordinate_triangle_square_not_in_ordinary_square() {
        let k = cyclotomic_spec(6).unwrap();
        let s = FatPointScheme::reduced(
            &k,
            "triangle",
            vec![pt(&k, [1, 0, 0]), pt(&k, [0, 1, 0]), pt(&k, [0, 0, 1])],
        )
        .unwrap();
        let xyz = HomogeneousForm::monomial(crate::polyring::Monomial::new(1, 1, 1), FieldElement::one(&k));
        let report = check_noncontainment(&s, 2, 2, &xyz, &CheckOptions { symbolic_dimension: true }).unwrap();
        assert_eq!(report.verdict, Verdict::NonContainment);
        assert_eq!(report.ordinary_dim, 0);
        assert_eq!(report.symbolic_dim, Some(1));
        assert!(!graded_containment(&s, 2, 2, 3).unwrap());
        assert!(graded_containment(&s, 1, 1, 3).unwrap());
        assert_eq!(witness_search(&s, 2, 2, 3).unwrap().len(), 1);
        assert!(witness_search(&s, 1, 1, 4).unwrap().is_empty());
    }

    #[test]
    fn verdict_strings_round_trip() {
        for v in [Verdict::NonContainment, Verdict::NotSymbolic, Verdict::InOrdinaryPower] {
            assert_eq!(v.to_string().parse::<Verdict>().unwrap(), v);
            assert_eq!(serde_json::to_string(&v).unwrap(), format!("\"{v}\""));
        }
    }
}
