//! Points and lines of the projective plane over `Q(ζ_n)` and the singular
//! locus of a line arrangement.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numberfield::FieldElement;
use crate::polyring::HomogeneousForm;

/// Scales so the first nonzero coordinate is 1; `None` for the zero vector.
fn normalize(v: [FieldElement; 3]) -> Option<[FieldElement; 3]> {
    let lead = v.iter().find(|c| !c.is_zero())?;
    if lead.is_one() {
        return Some(v);
    }
    let inv = lead.inv().expect("nonzero");
    Some(v.map(|c| &c * &inv))
}

fn cross(u: &[FieldElement; 3], v: &[FieldElement; 3]) -> [FieldElement; 3] {
    [
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

fn dot(u: &[FieldElement; 3], v: &[FieldElement; 3]) -> FieldElement {
    &(&(&u[0] * &v[0]) + &(&u[1] * &v[1])) + &(&u[2] * &v[2])
}

fn check_field(v: &[FieldElement; 3]) -> Result<()> {
    v[0].check_same_field(&v[1])?;
    v[0].check_same_field(&v[2])
}

/// A point `(x : y : z)` with first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [FieldElement; 3],
}

impl ProjPoint {
    pub fn new(coords: [FieldElement; 3]) -> Result<Self> {
        check_field(&coords)?;
        normalize(coords)
            .map(|coords| ProjPoint { coords })
            .ok_or(Error::ZeroVector("point"))
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn to_strings(&self) -> [String; 3] {
        self.coords.clone().map(|c| c.to_string())
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.to_strings();
        write!(f, "({x} : {y} : {z})")
    }
}

/// The line `u x + v y + w z = 0`, normalized like [`ProjPoint`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine {
    coeffs: [FieldElement; 3],
}

impl ProjLine {
    pub fn new(coeffs: [FieldElement; 3]) -> Result<Self> {
        check_field(&coeffs)?;
        normalize(coeffs)
            .map(|coeffs| ProjLine { coeffs })
            .ok_or(Error::ZeroVector("line"))
    }

    pub fn coeffs(&self) -> &[FieldElement; 3] {
        &self.coeffs
    }

    pub fn linear_form(&self) -> HomogeneousForm {
        HomogeneousForm::linear(&self.coeffs)
    }

    pub fn to_strings(&self) -> [String; 3] {
        self.coeffs.clone().map(|c| c.to_string())
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.linear_form())
    }
}

pub fn line_through(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    if p == q {
        return Err(Error::EqualInputs("line through a single point"));
    }
    ProjLine::new(cross(&p.coords, &q.coords))
}

pub fn meet(l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint> {
    if l1 == l2 {
        return Err(Error::EqualInputs("intersection of a line with itself"));
    }
    ProjPoint::new(cross(&l1.coeffs, &l2.coeffs))
}

pub fn incident(p: &ProjPoint, l: &ProjLine) -> bool {
    dot(&p.coords, &l.coeffs).is_zero()
}

/// A point on at least two lines, with the indices of all lines through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint {
    pub point: ProjPoint,
    pub lines: BTreeSet<usize>,
}

impl SingularPoint {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }
}

/// Intersection points of an arrangement, sorted by canonical coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularLocus {
    line_count: usize,
    points: Vec<SingularPoint>,
}

/// Serialized point: `{"point": [s, s, s], "mult": m, "lines": [indices]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocusRecord {
    pub point: [String; 3],
    pub mult: usize,
    pub lines: Vec<usize>,
}

impl SingularLocus {
    pub fn line_count(&self) -> usize {
        self.line_count
    }

    pub fn points(&self) -> &[SingularPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `{multiplicity → number of points}`.
    pub fn profile(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for p in &self.points {
            *out.entry(p.multiplicity()).or_insert(0) += 1;
        }
        out
    }

    pub fn with_multiplicity(&self, m: usize) -> impl Iterator<Item = &SingularPoint> {
        self.points.iter().filter(move |p| p.multiplicity() == m)
    }

    /// `Σ_P C(m_P, 2)`, which equals `C(#lines, 2)` for any arrangement.
    pub fn pair_count(&self) -> usize {
        self.points
            .iter()
            .map(|p| p.multiplicity() * (p.multiplicity() - 1) / 2)
            .sum()
    }

    pub fn to_records(&self) -> Vec<LocusRecord> {
        self.points
            .iter()
            .map(|p| LocusRecord {
                point: p.point.to_strings(),
                mult: p.multiplicity(),
                lines: p.lines.iter().copied().collect(),
            })
            .collect()
    }
}

/// Intersects every pair of lines, merges equal points and records every
/// line through each point.
pub fn singular_locus(lines: &[ProjLine]) -> Result<SingularLocus> {
    for w in lines.windows(2) {
        w[0].coeffs[0].check_same_field(&w[1].coeffs[0])?;
    }
    let pairs: Vec<(usize, usize)> = (0..lines.len())
        .flat_map(|i| (i + 1..lines.len()).map(move |j| (i, j)))
        .collect();
    let meets: Vec<ProjPoint> = pairs
        .par_iter()
        .map(|&(i, j)| {
            if lines[i] == lines[j] {
                Err(Error::DuplicateLine { first: i, second: j })
            } else {
                meet(&lines[i], &lines[j])
            }
        })
        .collect::<Result<_>>()?;
    let distinct: BTreeSet<ProjPoint> = meets.into_iter().collect();
    let points = distinct
        .into_par_iter()
        .map(|point| {
            let through: BTreeSet<usize> = lines
                .iter()
                .enumerate()
                .filter(|(_, l)| incident(&point, l))
                .map(|(i, _)| i)
                .collect();
            debug_assert!(through.len() >= 2);
            SingularPoint { point, lines: through }
        })
        .collect();
    Ok(SingularLocus {
        line_count: lines.len(),
        points,
    })
}

/// Point-by-line incidence matrix for the points of one multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceTable {
    pub line_count: usize,
    pub rows: Vec<(ProjPoint, Vec<bool>)>,
}

impl IncidenceTable {
    /// The line-index sets of the rows.
    pub fn line_sets(&self) -> Vec<BTreeSet<usize>> {
        self.rows
            .iter()
            .map(|(_, inc)| inc.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i).collect())
            .collect()
    }

    /// CSV with a header of line labels and `+` marking incidence.
    pub fn to_csv(&self, labels: &[String]) -> String {
        let mut out = String::from("point");
        for l in labels.iter().take(self.line_count) {
            out.push(',');
            out.push_str(l);
        }
        out.push('\n');
        for (n, (_, inc)) in self.rows.iter().enumerate() {
            out.push_str(&format!("P{}", n + 1));
            for &b in inc {
                out.push(',');
                if b {
                    out.push('+');
                }
            }
            out.push('\n');
        }
        out
    }
}

pub fn incidence_table(locus: &SingularLocus, multiplicity: usize) -> IncidenceTable {
    let rows = locus
        .with_multiplicity(multiplicity)
        .map(|p| {
            let mut inc = vec![false; locus.line_count];
            for &i in &p.lines {
                inc[i] = true;
            }
            (p.point.clone(), inc)
        })
        .collect();
    IncidenceTable {
        line_count: locus.line_count,
        rows,
    }
}
