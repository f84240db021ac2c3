//! Named line arrangements: Yoshinaga's deformation of the Fermat
//! arrangement, the Fermat (CEVA) family, and the Hesse-pencil cubic through
//! Yoshinaga's double points. Also the JSON arrangement file format.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{singular_locus, ProjLine, SingularLocus};
use crate::numberfield::{cyclotomic_spec, parse_element, FieldElement, FieldSpec, Rational};
use crate::polyring::{expand_product, proportionality, HomogeneousForm, Monomial, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledLine {
    pub label: String,
    pub line: ProjLine,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
}

/// An ordered list of pairwise distinct lines over one cyclotomic field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    field: Arc<FieldSpec>,
    lines: Vec<LabeledLine>,
    provenance: Provenance,
}

impl Arrangement {
    pub fn new(field: Arc<FieldSpec>, lines: Vec<LabeledLine>, provenance: Provenance) -> Result<Self> {
        for l in &lines {
            l.line.coeffs()[0].check_same_field(&FieldElement::zero(&field))?;
        }
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                if lines[i].line == lines[j].line {
                    return Err(Error::DuplicateLine { first: i, second: j });
                }
            }
        }
        Ok(Arrangement {
            field,
            lines,
            provenance,
        })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn lines(&self) -> &[LabeledLine] {
        &self.lines
    }

    pub fn proj_lines(&self) -> Vec<ProjLine> {
        self.lines.iter().map(|l| l.line.clone()).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.lines.iter().map(|l| l.label.clone()).collect()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn line_forms(&self) -> Vec<HomogeneousForm> {
        self.lines.iter().map(|l| l.line.linear_form()).collect()
    }

    /// The product of all line equations.
    pub fn defining_form(&self) -> HomogeneousForm {
        expand_product(&self.field, &self.line_forms())
    }

    pub fn singular_locus(&self) -> Result<SingularLocus> {
        singular_locus(&self.proj_lines())
    }

    /// The arrangement formed by the lines at `indices`, in that order.
    pub fn sub_arrangement(&self, indices: &[usize], name: &str) -> Result<Self> {
        let lines = indices
            .iter()
            .map(|&i| {
                self.lines
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::InvalidParameter(format!("no line with index {i}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(
            self.field.clone(),
            lines,
            Provenance {
                name: name.to_string(),
                params: BTreeMap::new(),
            },
        )
    }
}

/// Parameter `c` of Yoshinaga's deformation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationParams {
    c: Rational,
}

impl DeformationParams {
    pub fn new(c: Rational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidParameter("deformation parameter c must be nonzero".into()));
        }
        Ok(DeformationParams { c })
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }
}

impl Default for DeformationParams {
    fn default() -> Self {
        DeformationParams {
            c: Rational::from_integer(15.into()),
        }
    }
}

/// The multiplicity profile of Yoshinaga's arrangement for generic `c`.
pub fn yoshinaga_profile() -> BTreeMap<usize, usize> {
    BTreeMap::from([(2, 9), (3, 48)])
}

/// Cyclic substitution `(x, y, z) ↦ (y, z, x)` applied `power` times.
pub fn tau(f: &HomogeneousForm, power: u32) -> HomogeneousForm {
    (0..power % 3).fold(f.clone(), |g, _| g.substitute_variables([Var::Y, Var::Z, Var::X]))
}

/// `τ` on the coefficient triple of a linear form: `u y + v z + w x`.
fn tau_coeffs(c: &[FieldElement; 3], power: u32) -> [FieldElement; 3] {
    let mut out = c.clone();
    for _ in 0..power % 3 {
        let [u, v, w] = out;
        out = [w, u, v];
    }
    out
}

/// The six linear factors of the deformed sextic
/// `(x^3 - y^3)(x + y - cz)(a x + a^5 y + cz)(a^5 x + a y + cz)` over `Q(ζ_6)`.
pub fn deformation_factors(field: &Arc<FieldSpec>, c: &Rational) -> Vec<[FieldElement; 3]> {
    let int = |v: i64| FieldElement::from_int(field, v);
    let a = FieldElement::power_of_generator(field, 1);
    let a5 = FieldElement::power_of_generator(field, 5);
    let c = FieldElement::from_rational(field, c.clone());
    vec![
        [int(1), int(-1), int(0)],
        [int(1), a.clone(), int(0)],
        [int(1), &int(1) - &a, int(0)],
        [int(1), int(1), -&c],
        [a.clone(), a5.clone(), c.clone()],
        [a5, a, c],
    ]
}

/// `x^6 - y^6 + 3c x^4 y z - 3c x y^4 z - c^3 x^3 z^3 + c^3 y^3 z^3`.
pub fn deformation_sextic(field: &Arc<FieldSpec>, c: &Rational) -> HomogeneousForm {
    let q = |r: Rational| FieldElement::from_rational(field, r);
    let three_c = c * Rational::from_integer(3.into());
    let c3 = c * c * c;
    HomogeneousForm::from_terms(
        field,
        6,
        [
            (Monomial::new(6, 0, 0), q(Rational::from_integer(1.into()))),
            (Monomial::new(0, 6, 0), q(Rational::from_integer((-1).into()))),
            (Monomial::new(4, 1, 1), q(three_c.clone())),
            (Monomial::new(1, 4, 1), q(-three_c)),
            (Monomial::new(3, 0, 3), q(-c3.clone())),
            (Monomial::new(0, 3, 3), q(c3)),
        ],
    )
    .expect("all terms have degree 6")
}

/// Yoshinaga's 18 lines over `Q(ζ_6)`: the factors of the deformed sextic and
/// their images under `τ` and `τ^2`, labelled `l1..l18` in that order.
///
/// The product of the lines is checked against the product of the three
/// expanded sextics. A parameter whose singular profile differs from
/// `{3: 48, 2: 9}` is logged and marked in the provenance.
pub fn yoshinaga(params: &DeformationParams) -> Result<Arrangement> {
    let field = cyclotomic_spec(6)?;
    let factors = deformation_factors(&field, params.c());
    let mut lines = Vec::with_capacity(18);
    for power in 0..3 {
        for f in &factors {
            lines.push(LabeledLine {
                label: format!("l{}", lines.len() + 1),
                line: ProjLine::new(tau_coeffs(f, power))?,
            });
        }
    }
    let mut provenance = Provenance {
        name: "yoshinaga".into(),
        params: BTreeMap::from([("c".to_string(), params.c().to_string())]),
    };
    let arrangement = Arrangement::new(field.clone(), lines, provenance.clone())?;

    let sextic = deformation_sextic(&field, params.c());
    let expected = expand_product(&field, &[sextic.clone(), tau(&sextic, 1), tau(&sextic, 2)]);
    if proportionality(&arrangement.defining_form(), &expected).is_none() {
        return Err(Error::Construction(
            "product of the lines differs from P1'·P2'·P3'".into(),
        ));
    }

    let profile = arrangement.singular_locus()?.profile();
    let generic = profile == yoshinaga_profile();
    if !generic {
        log::warn!("c = {} is degenerate: singular profile {:?}", params.c(), profile);
    }
    provenance
        .params
        .insert("generic".to_string(), generic.to_string());
    Ok(Arrangement {
        provenance,
        ..arrangement
    })
}

/// The Fermat arrangement: the `3n` linear factors of
/// `(x^n - y^n)(y^n - z^n)(z^n - x^n)` over `Q(ζ_n)`.
pub fn fermat(n: u32) -> Result<Arrangement> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("fermat arrangement needs n >= 3, got {n}")));
    }
    let field = cyclotomic_spec(n)?;
    let one = FieldElement::one(&field);
    let zero = FieldElement::zero(&field);
    let mut lines = Vec::with_capacity(3 * n as usize);
    for k in 0..n {
        let root = -FieldElement::power_of_generator(&field, i64::from(k));
        let xy = [one.clone(), root.clone(), zero.clone()];
        for power in 0..3 {
            lines.push(LabeledLine {
                label: format!("l{}", lines.len() + 1),
                line: ProjLine::new(tau_coeffs(&xy, power))?,
            });
        }
    }
    // Order: all x - ζ^k y, then y - ζ^k z, then z - ζ^k x.
    let mut ordered: Vec<LabeledLine> = Vec::with_capacity(lines.len());
    for power in 0..3 {
        ordered.extend(lines.iter().skip(power).step_by(3).cloned());
    }
    for (i, l) in ordered.iter_mut().enumerate() {
        l.label = format!("l{}", i + 1);
    }
    Arrangement::new(
        field,
        ordered,
        Provenance {
            name: "fermat".into(),
            params: BTreeMap::from([("n".to_string(), n.to_string())]),
        },
    )
}

/// `(x^n - y^n)(y^n - z^n)(z^n - x^n)` expanded directly.
pub fn fermat_form(field: &Arc<FieldSpec>, n: u32) -> HomogeneousForm {
    let binomial = |first: Monomial, second: Monomial| {
        HomogeneousForm::from_terms(
            field,
            n,
            [
                (first, FieldElement::one(field)),
                (second, FieldElement::from_int(field, -1)),
            ],
        )
        .expect("degree n terms")
    };
    expand_product(
        field,
        &[
            binomial(Monomial::new(n, 0, 0), Monomial::new(0, n, 0)),
            binomial(Monomial::new(0, n, 0), Monomial::new(0, 0, n)),
            binomial(Monomial::new(0, 0, n), Monomial::new(n, 0, 0)),
        ],
    )
}

/// The member `μ(x^3 + y^3 + z^3) + λ xyz` of the Hesse pencil.
pub fn hesse_pencil_member(field: &Arc<FieldSpec>, mu: &Rational, lambda: &Rational) -> HomogeneousForm {
    let mu = FieldElement::from_rational(field, mu.clone());
    HomogeneousForm::from_terms(
        field,
        3,
        [
            (Monomial::new(3, 0, 0), mu.clone()),
            (Monomial::new(0, 3, 0), mu.clone()),
            (Monomial::new(0, 0, 3), mu),
            (Monomial::new(1, 1, 1), FieldElement::from_rational(field, lambda.clone())),
        ],
    )
    .expect("cubic terms")
}

/// `x^3 + y^3 + z^3 - (3379/225) xyz`, the cubic through the nine double
/// points of Yoshinaga's arrangement with `c = 15`.
pub fn hesse_cubic(field: &Arc<FieldSpec>) -> HomogeneousForm {
    hesse_pencil_member(
        field,
        &Rational::from_integer(1.into()),
        &Rational::new((-3379).into(), 225.into()),
    )
}

#[derive(Debug, Serialize, Deserialize)]
struct FieldRecord {
    conductor: u32,
}

#[derive(Debug, Serialize, Deserialize)]
struct LineRecord {
    label: String,
    coeffs: [String; 3],
}

#[derive(Debug, Serialize, Deserialize)]
struct ArrangementFile {
    field: FieldRecord,
    lines: Vec<LineRecord>,
    #[serde(default)]
    provenance: Provenance,
}

pub fn arrangement_to_json(a: &Arrangement) -> String {
    let file = ArrangementFile {
        field: FieldRecord {
            conductor: a.field.conductor(),
        },
        lines: a
            .lines
            .iter()
            .map(|l| LineRecord {
                label: l.label.clone(),
                coeffs: l.line.to_strings(),
            })
            .collect(),
        provenance: a.provenance.clone(),
    };
    serde_json::to_string_pretty(&file).expect("arrangement serializes")
}

/// Parses an arrangement file; `origin` names the source in error messages.
pub fn arrangement_from_json(text: &str, origin: &str) -> Result<Arrangement> {
    let format_err = |message: String| Error::Format {
        path: origin.to_string(),
        message,
    };
    let file: ArrangementFile = serde_json::from_str(text).map_err(|e| format_err(e.to_string()))?;
    let field = cyclotomic_spec(file.field.conductor).map_err(|e| format_err(e.to_string()))?;
    let mut lines = Vec::with_capacity(file.lines.len());
    for (i, rec) in file.lines.iter().enumerate() {
        let mut coeffs = Vec::with_capacity(3);
        for (j, s) in rec.coeffs.iter().enumerate() {
            let e = parse_element(s, &field).map_err(|e| {
                format_err(format!("line {} ({}), coefficient {}: {e}", i, rec.label, j))
            })?;
            coeffs.push(e);
        }
        let coeffs: [FieldElement; 3] = coeffs.try_into().expect("three coefficients");
        let line = ProjLine::new(coeffs)
            .map_err(|e| format_err(format!("line {} ({}): {e}", i, rec.label)))?;
        lines.push(LabeledLine {
            label: rec.label.clone(),
            line,
        });
    }
    Arrangement::new(field, lines, file.provenance)
}

pub fn save_arrangement(a: &Arrangement, path: &Path) -> Result<()> {
    std::fs::write(path, arrangement_to_json(a) + "\n").map_err(|source| Error::Io {
        context: format!("writing {}", path.display()),
        source,
    })
}

pub fn load_arrangement(path: &Path) -> Result<Arrangement> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        context: format!("reading {}", path.display()),
        source,
    })?;
    arrangement_from_json(&text, &path.display().to_string())
}

/// Loads an arrangement and requires it to live in `Q(ζ_conductor)`.
pub fn load_arrangement_in(path: &Path, conductor: u32) -> Result<Arrangement> {
    let a = load_arrangement(path)?;
    if a.field.conductor() != conductor {
        return Err(Error::FieldMismatch {
            left: a.field.conductor(),
            right: conductor,
        });
    }
    Ok(a)
}
