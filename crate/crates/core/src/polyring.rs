//! Homogeneous polynomials in `x, y, z` over a cyclotomic field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numberfield::{check_specs, parse_element, FieldElement, FieldSpec, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }
}

/// `x^i y^j z^k`. Ordered graded-lexicographically with `x > y > z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub fn new(i: u32, j: u32, k: u32) -> Self {
        Monomial([i, j, k])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> [u32; 3] {
        self.0
    }

    /// Position of this monomial in [`monomial_basis`] of its degree.
    pub fn index(&self) -> usize {
        let d = self.degree() as usize;
        let [i, j, _] = self.0.map(|e| e as usize);
        (d - i) * (d - i + 1) / 2 + (d - i - j)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.0[0].cmp(&other.0[0]))
            .then(self.0[1].cmp(&other.0[1]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn basis_len(d: u32) -> usize {
    let d = d as usize;
    (d + 1) * (d + 2) / 2
}

/// All monomials of degree `d`, largest first: `x^d, x^(d-1) y, x^(d-1) z, ...`.
pub fn monomial_basis(d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(basis_len(d));
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push(Monomial::new(i, j, d - i - j));
        }
    }
    out
}

/// All exponent triples `(α, β, γ)` with `α + β + γ = order`, in basis order.
pub fn derivative_multi_indices(order: u32) -> Vec<[u32; 3]> {
    monomial_basis(order).into_iter().map(|m| m.0).collect()
}

fn falling_factorial(n: u32, k: u32) -> u64 {
    (0..k).map(|t| u64::from(n - t)).product()
}

/// Powers `p^0 ..= p^max` of each coordinate.
fn coordinate_powers(point: &[FieldElement; 3], max: u32) -> [Vec<FieldElement>; 3] {
    point.clone().map(|c| {
        let mut pw = Vec::with_capacity(max as usize + 1);
        pw.push(FieldElement::one(c.spec()));
        for t in 1..=max as usize {
            let next = &pw[t - 1] * &c;
            pw.push(next);
        }
        pw
    })
}

/// The linear functional `f ↦ (∂^α_x ∂^β_y ∂^γ_z f)(p)` on degree-`d` forms,
/// as a row vector in [`monomial_basis`] coordinates.
pub fn derivative_functional(d: u32, multi: [u32; 3], point: &[FieldElement; 3]) -> Vec<FieldElement> {
    let spec = point[0].spec().clone();
    let pw = coordinate_powers(point, d);
    monomial_basis(d)
        .into_iter()
        .map(|m| {
            let e = m.0;
            if (0..3).any(|v| e[v] < multi[v]) {
                return FieldElement::zero(&spec);
            }
            let scalar: u64 = (0..3).map(|v| falling_factorial(e[v], multi[v])).product();
            let mut value = &(&pw[0][(e[0] - multi[0]) as usize] * &pw[1][(e[1] - multi[1]) as usize])
                * &pw[2][(e[2] - multi[2]) as usize];
            if scalar != 1 {
                value = value.scale(&Rational::from_integer(scalar.into()));
            }
            value
        })
        .collect()
}

/// A homogeneous form of fixed degree. Only nonzero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogeneousForm {
    spec: Arc<FieldSpec>,
    degree: u32,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl HomogeneousForm {
    pub fn zero(spec: &Arc<FieldSpec>, degree: u32) -> Self {
        HomogeneousForm {
            spec: spec.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::monomial(Monomial::new(0, 0, 0), c)
    }

    pub fn one(spec: &Arc<FieldSpec>) -> Self {
        Self::constant(FieldElement::one(spec))
    }

    pub fn monomial(m: Monomial, c: FieldElement) -> Self {
        let mut f = Self::zero(c.spec(), m.degree());
        if !c.is_zero() {
            f.terms.insert(m, c);
        }
        f
    }

    pub fn variable(spec: &Arc<FieldSpec>, v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Self::monomial(Monomial(e), FieldElement::one(spec))
    }

    /// The linear form `u x + v y + w z`.
    pub fn linear(coeffs: &[FieldElement; 3]) -> Self {
        let spec = coeffs[0].spec();
        let mut f = Self::zero(spec, 1);
        for (v, c) in Var::ALL.iter().zip(coeffs) {
            f.add_term(monomial_of_var(*v), c.clone());
        }
        f
    }

    /// Builds a form from `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        spec: &Arc<FieldSpec>,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Result<Self> {
        let mut f = Self::zero(spec, degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: m.degree(),
                });
            }
            check_specs(spec, c.spec())?;
            f.add_term(m, c);
        }
        Ok(f)
    }

    /// Reads coefficients in [`monomial_basis`] order.
    pub fn from_vector(spec: &Arc<FieldSpec>, degree: u32, coeffs: &[FieldElement]) -> Result<Self> {
        if coeffs.len() != basis_len(degree) {
            return Err(Error::DimensionMismatch {
                expected: basis_len(degree),
                actual: coeffs.len(),
            });
        }
        Self::from_terms(
            spec,
            degree,
            monomial_basis(degree).into_iter().zip(coeffs.iter().cloned()),
        )
    }

    pub fn coefficient_vector(&self) -> Vec<FieldElement> {
        let mut out = vec![FieldElement::zero(&self.spec); basis_len(self.degree)];
        for (m, c) in &self.terms {
            out[m.index()] = c.clone();
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, FieldElement> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.spec))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &HomogeneousForm) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HomogeneousForm) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scalar_mul(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(&self.spec, self.degree);
        }
        self.map_coeffs(|x| x * c)
    }

    fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        HomogeneousForm {
            spec: self.spec.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, f(c))).collect(),
        }
    }

    fn check_compatible(&self, other: &HomogeneousForm) -> Result<()> {
        check_specs(&self.spec, &other.spec)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &HomogeneousForm) -> Self {
        assert_eq!(
            self.spec.conductor(),
            other.spec.conductor(),
            "multiplying forms over different fields"
        );
        let degree = self.degree + other.degree;
        let mut acc: Vec<Option<FieldElement>> = vec![None; basis_len(degree)];
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let slot = &mut acc[m1.mul(m2).index()];
                let prod = c1 * c2;
                *slot = Some(match slot.take() {
                    Some(s) => s + prod,
                    None => prod,
                });
            }
        }
        let terms = monomial_basis(degree)
            .into_iter()
            .zip(acc)
            .filter_map(|(m, c)| c.filter(|c| !c.is_zero()).map(|c| (m, c)))
            .collect();
        HomogeneousForm {
            spec: self.spec.clone(),
            degree,
            terms,
        }
    }

    pub fn partial_derivative(&self, v: Var) -> Self {
        let idx = v.index();
        let mut out = Self::zero(&self.spec, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut dm = m.0;
            dm[idx] -= 1;
            out.add_term(Monomial(dm), c.scale(&Rational::from_integer(e.into())));
        }
        out
    }

    /// Applies the variable substitution `x ↦ images[0]`, `y ↦ images[1]`,
    /// `z ↦ images[2]` where the images are variables.
    pub fn substitute_variables(&self, images: [Var; 3]) -> Self {
        let mut out = Self::zero(&self.spec, self.degree);
        for (m, c) in &self.terms {
            let mut e = [0; 3];
            for (src, img) in images.iter().enumerate() {
                e[img.index()] += m.0[src];
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Value of the representative form at the coordinate triple `p`.
    pub fn evaluate(&self, p: &[FieldElement; 3]) -> FieldElement {
        let pw = coordinate_powers(p, self.degree);
        let mut acc = FieldElement::zero(&self.spec);
        for (m, c) in &self.terms {
            let [i, j, k] = m.0.map(|e| e as usize);
            acc = acc + &(&(c * &pw[0][i]) * &(&pw[1][j] * &pw[2][k]));
        }
        acc
    }

    /// `(∂^α_x ∂^β_y ∂^γ_z f)(p)` computed directly from the terms.
    pub fn derivative_at(&self, multi: [u32; 3], p: &[FieldElement; 3]) -> FieldElement {
        let pw = coordinate_powers(p, self.degree);
        let mut acc = FieldElement::zero(&self.spec);
        for (m, c) in &self.terms {
            let e = m.0;
            if (0..3).any(|v| e[v] < multi[v]) {
                continue;
            }
            let scalar: u64 = (0..3).map(|v| falling_factorial(e[v], multi[v])).product();
            let mut term = &(c * &pw[0][(e[0] - multi[0]) as usize])
                * &(&pw[1][(e[1] - multi[1]) as usize] * &pw[2][(e[2] - multi[2]) as usize]);
            if scalar != 1 {
                term = term.scale(&Rational::from_integer(scalar.into()));
            }
            acc = acc + term;
        }
        acc
    }

    /// The first partial derivative of order `< m` (by order, then basis
    /// order) that does not vanish at `p`.
    pub fn first_nonvanishing_derivative(&self, p: &[FieldElement; 3], m: u32) -> Option<[u32; 3]> {
        (0..m)
            .flat_map(derivative_multi_indices)
            .find(|multi| !self.derivative_at(*multi, p).is_zero())
    }

    /// True iff every partial derivative of order `0..m` vanishes at `p`.
    pub fn vanishes_to_order(&self, p: &[FieldElement; 3], m: u32) -> bool {
        self.first_nonvanishing_derivative(p, m).is_none()
    }

    /// Largest `m` with `vanishes_to_order(p, m)`; `None` for the zero form.
    pub fn order_at(&self, p: &[FieldElement; 3]) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        (0..=self.degree)
            .find(|&o| {
                derivative_multi_indices(o)
                    .into_iter()
                    .any(|multi| !self.derivative_at(multi, p).is_zero())
            })
    }

    /// Multiplies by the common denominator and removes the integer content,
    /// giving a scalar multiple with coprime integer coefficients.
    pub fn primitive_part(&self) -> Self {
        use num_bigint::BigInt;
        use num_integer::Integer;
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
        let mut gcd = BigInt::from(0);
        for c in self.terms.values() {
            for r in c.coeffs() {
                gcd = gcd.gcd(&(r * Rational::from_integer(lcm.clone())).to_integer());
            }
        }
        if gcd == BigInt::from(0) {
            return self.clone();
        }
        self.map_coeffs(|c| c.scale(&Rational::new(lcm.clone(), gcd.clone())))
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| TermRecord {
                monomial: m.0,
                coeff: c.to_string(),
            })
            .collect()
    }

    /// Rebuilds a form from serialized terms. An empty list is the zero form
    /// of degree `empty_degree`.
    pub fn from_records(spec: &Arc<FieldSpec>, records: &[TermRecord], empty_degree: u32) -> Result<Self> {
        let degree = records
            .first()
            .map_or(empty_degree, |r| r.monomial.iter().sum());
        let terms = records
            .iter()
            .map(|r| Ok((Monomial(r.monomial), parse_element(&r.coeff, spec)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(spec, degree, terms)
    }
}

fn monomial_of_var(v: Var) -> Monomial {
    let mut e = [0; 3];
    e[v.index()] = 1;
    Monomial(e)
}

/// Product of all factors; the empty product is the constant 1.
pub fn expand_product(spec: &Arc<FieldSpec>, factors: &[HomogeneousForm]) -> HomogeneousForm {
    factors
        .iter()
        .fold(HomogeneousForm::one(spec), |acc, f| acc.multiply(f))
}

/// The scalar `λ` with `g = λ · f`, if both are nonzero and proportional.
pub fn proportionality(f: &HomogeneousForm, g: &HomogeneousForm) -> Option<FieldElement> {
    if f.degree != g.degree || f.is_zero() || g.is_zero() || f.terms.len() != g.terms.len() {
        return None;
    }
    let (m, c) = f.terms.iter().next()?;
    let lambda = g.terms.get(m)? * &c.inv().ok()?;
    (f.scalar_mul(&lambda) == *g).then_some(lambda)
}

/// Serialized term: `{"monomial": [i, j, k], "coeff": "<element>"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub monomial: [u32; 3],
    pub coeff: String,
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = ["x", "y", "z"]
                .iter()
                .zip(m.0)
                .filter(|(_, e)| *e > 0)
                .map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            let coeff = c.to_string();
            let simple = c.as_rational().is_some();
            if n > 0 {
                f.write_str(" + ")?;
            }
            match (vars.is_empty(), coeff.as_str()) {
                (true, _) => write!(f, "({coeff})")?,
                (false, "1") => write!(f, "{}", vars.join("*"))?,
                (false, _) if simple => write!(f, "{coeff}*{}", vars.join("*"))?,
                (false, _) => write!(f, "({coeff})*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomogeneousForm[deg {}]({})", self.degree, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::cyclotomic_spec;

    fn q6() -> Arc<FieldSpec> {
        cyclotomic_spec(6).unwrap()
    }

    fn el(spec: &Arc<FieldSpec>, s: &str) -> FieldElement {
        parse_element(s, spec).unwrap()
    }

    fn lin(spec: &Arc<FieldSpec>, u: &str, v: &str, w: &str) -> HomogeneousForm {
        HomogeneousForm::linear(&[el(spec, u), el(spec, v), el(spec, w)])
    }

    fn form(spec: &Arc<FieldSpec>, terms: &[([u32; 3], &str)]) -> HomogeneousForm {
        let degree = terms[0].0.iter().sum();
        HomogeneousForm::from_terms(
            spec,
            degree,
            terms.iter().map(|(m, c)| (Monomial(*m), el(spec, c))),
        )
        .unwrap()
    }

    #[test]
    fn basis_sizes_and_order() {
        let b1 = monomial_basis(1);
        assert_eq!(b1, vec![Monomial::new(1, 0, 0), Monomial::new(0, 1, 0), Monomial::new(0, 0, 1)]);
        assert_eq!(monomial_basis(3).len(), 10);
        assert_eq!(monomial_basis(21).len(), 253);
        for d in 0..12 {
            let basis = monomial_basis(d);
            assert_eq!(basis.len(), basis_len(d));
            for (i, m) in basis.iter().enumerate() {
                assert_eq!(m.index(), i);
            }
            assert!(basis.windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn difference_of_squares() {
        let k = q6();
        let f = lin(&k, "1", "-1", "0").multiply(&lin(&k, "1", "1", "0"));
        assert_eq!(f, form(&k, &[([2, 0, 0], "1"), ([0, 2, 0], "-1")]));
    }

    #[test]
    fn product_with_zero_keeps_degree() {
        let k = q6();
        let f = lin(&k, "1", "2", "3").multiply(&HomogeneousForm::zero(&k, 4));
        assert!(f.is_zero());
        assert_eq!(f.degree(), 5);
    }

    #[test]
    fn conjugate_linear_factors() {
        // (x + a y)(x + (1 - a) y): cross terms a + (1 - a) = 1 and a(1 - a) = 1.
        let k = q6();
        let f = lin(&k, "1", "a", "0").multiply(&lin(&k, "1", "1 - a", "0"));
        assert_eq!(f, form(&k, &[([2, 0, 0], "1"), ([1, 1, 0], "1"), ([0, 2, 0], "1")]));
    }

    #[test]
    fn empty_product_is_one() {
        let k = q6();
        assert_eq!(expand_product(&k, &[]), HomogeneousForm::one(&k));
    }

    #[test]
    fn cube_roots_factor_x3_minus_y3() {
        let k = q6();
        let f = expand_product(
            &k,
            &[lin(&k, "1", "-1", "0"), lin(&k, "1", "a", "0"), lin(&k, "1", "1 - a", "0")],
        );
        assert_eq!(f, form(&k, &[([3, 0, 0], "1"), ([0, 3, 0], "-1")]));
    }

    #[test]
    fn add_rejects_degree_mismatch() {
        let k = q6();
        let f = lin(&k, "1", "0", "0");
        let g = f.multiply(&f);
        assert!(matches!(f.add(&g), Err(Error::DegreeMismatch { .. })));
        assert!(f.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn partial_derivatives() {
        let k = q6();
        let x3 = form(&k, &[([3, 0, 0], "1")]);
        assert_eq!(x3.partial_derivative(Var::X), form(&k, &[([2, 0, 0], "3")]));
        let sq = form(&k, &[([2, 0, 0], "1"), ([0, 2, 0], "-1")]);
        let dz = sq.partial_derivative(Var::Z);
        assert!(dz.is_zero());
        assert_eq!(dz.degree(), 1);
        let c = HomogeneousForm::one(&k);
        assert_eq!(c.partial_derivative(Var::X).degree(), 0);
    }

    #[test]
    fn evaluation() {
        let k = q6();
        let f = lin(&k, "1", "-1", "0");
        let p = |a: &str, b: &str, c: &str| [el(&k, a), el(&k, b), el(&k, c)];
        assert!(f.evaluate(&p("1", "1", "0")).is_zero());
        assert!(f.evaluate(&p("1", "0", "0")).is_one());
    }

    #[test]
    fn multiplicity_of_node() {
        let k = q6();
        let xy = form(&k, &[([1, 1, 0], "1")]);
        let origin = [el(&k, "0"), el(&k, "0"), el(&k, "1")];
        assert!(xy.vanishes_to_order(&origin, 1));
        assert!(xy.vanishes_to_order(&origin, 2));
        assert!(!xy.vanishes_to_order(&origin, 3));
        assert_eq!(xy.first_nonvanishing_derivative(&origin, 3), Some([1, 1, 0]));
        assert_eq!(xy.order_at(&origin), Some(2));
    }

    #[test]
    fn derivative_functional_matches_direct_evaluation() {
        let k = q6();
        let f = form(
            &k,
            &[([3, 1, 0], "2a"), ([1, 1, 2], "-1/3"), ([0, 0, 4], "a + 5"), ([2, 2, 0], "7")],
        );
        let p = [el(&k, "1"), el(&k, "a - 2"), el(&k, "1/15*a")];
        let coeffs = f.coefficient_vector();
        for order in 0..4 {
            for multi in derivative_multi_indices(order) {
                let row = derivative_functional(4, multi, &p);
                let via_row = row
                    .iter()
                    .zip(&coeffs)
                    .fold(FieldElement::zero(&k), |acc, (r, c)| acc + r * c);
                assert_eq!(via_row, f.derivative_at(multi, &p), "{multi:?}");
            }
        }
    }

    #[test]
    fn substitution_permutes_variables() {
        let k = q6();
        let x = HomogeneousForm::variable(&k, Var::X);
        assert_eq!(
            x.substitute_variables([Var::Y, Var::Z, Var::X]),
            HomogeneousForm::variable(&k, Var::Y)
        );
    }

    #[test]
    fn primitive_part_clears_denominators() {
        let k = q6();
        let f = form(&k, &[([1, 0, 0], "2/3"), ([0, 1, 0], "4/9*a")]);
        let p = f.primitive_part();
        assert_eq!(p, form(&k, &[([1, 0, 0], "3"), ([0, 1, 0], "2a")]));
    }

    #[test]
    fn records_round_trip() {
        let k = q6();
        let f = form(&k, &[([2, 0, 0], "-1/15*a + 1/15"), ([0, 1, 1], "3")]);
        let back = HomogeneousForm::from_records(&k, &f.to_records(), 0).unwrap();
        assert_eq!(back, f);
        let z = HomogeneousForm::from_records(&k, &[], 5).unwrap();
        assert!(z.is_zero() && z.degree() == 5);
    }
}
