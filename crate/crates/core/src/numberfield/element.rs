use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{FieldSpec, Rational};
use crate::error::{Error, Result};

/// An element of `Q(ζ_n)`: `coeffs[k]` is the coefficient of `a^k`.
///
/// Arithmetic between elements of different fields is a programming error and
/// panics; use [`FieldElement::check_same_field`] at API boundaries.
#[derive(Clone)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    pub fn zero(spec: &Arc<FieldSpec>) -> Self {
        FieldElement {
            spec: spec.clone(),
            coeffs: vec![Rational::zero(); spec.degree()],
        }
    }

    pub fn one(spec: &Arc<FieldSpec>) -> Self {
        Self::from_rational(spec, Rational::one())
    }

    pub fn from_rational(spec: &Arc<FieldSpec>, value: Rational) -> Self {
        let mut e = Self::zero(spec);
        e.coeffs[0] = value;
        e
    }

    pub fn from_int(spec: &Arc<FieldSpec>, value: i64) -> Self {
        Self::from_rational(spec, Rational::from_integer(value.into()))
    }

    /// Builds an element from exactly `φ(n)` power-basis coefficients.
    pub fn from_coeffs(spec: &Arc<FieldSpec>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != spec.degree() {
            return Err(Error::DimensionMismatch {
                expected: spec.degree(),
                actual: coeffs.len(),
            });
        }
        Ok(FieldElement {
            spec: spec.clone(),
            coeffs,
        })
    }

    /// Reduces an arbitrary-length polynomial in `a` modulo `Φ_n`.
    pub fn from_polynomial(spec: &Arc<FieldSpec>, mut poly: Vec<Rational>) -> Self {
        reduce_in_place(spec, &mut poly);
        poly.resize(spec.degree(), Rational::zero());
        FieldElement {
            spec: spec.clone(),
            coeffs: poly,
        }
    }

    /// The generator `a = ζ_n`.
    pub fn generator(spec: &Arc<FieldSpec>) -> Self {
        Self::power_of_generator(spec, 1)
    }

    /// `a^k` for any integer `k`; uses `a^n = 1`.
    pub fn power_of_generator(spec: &Arc<FieldSpec>, k: i64) -> Self {
        let n = i64::from(spec.conductor());
        let e = k.rem_euclid(n) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::from_polynomial(spec, poly)
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Returns the rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn check_same_field(&self, other: &FieldElement) -> Result<()> {
        check_specs(&self.spec, &other.spec)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        FieldElement {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on the
    /// representative polynomial and `Φ_n`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(&self.spec, r.recip()));
        }
        let modulus: Vec<Rational> = self
            .spec
            .modulus()
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let mut r0 = modulus;
        let mut r1 = trimmed(self.coeffs.clone());
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1 = vec![Rational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
        }
        // Φ_n is irreducible, so the last nonzero remainder is a unit.
        let c = r1[0].recip();
        let s1 = s1.into_iter().map(|x| x * &c).collect();
        Ok(Self::from_polynomial(&self.spec, s1))
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.spec);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()))
    }

    pub(crate) fn from_parts(spec: Arc<FieldSpec>, coeffs: Vec<Rational>) -> Self {
        debug_assert_eq!(coeffs.len(), spec.degree());
        FieldElement { spec, coeffs }
    }
}

pub(crate) fn check_specs(a: &FieldSpec, b: &FieldSpec) -> Result<()> {
    if a.conductor() == b.conductor() {
        Ok(())
    } else {
        Err(Error::FieldMismatch {
            left: a.conductor(),
            right: b.conductor(),
        })
    }
}

fn assert_same(a: &FieldElement, b: &FieldElement) {
    assert!(
        Arc::ptr_eq(&a.spec, &b.spec) || a.spec.conductor() == b.spec.conductor(),
        "arithmetic between Q(ζ_{}) and Q(ζ_{})",
        a.spec.conductor(),
        b.spec.conductor()
    );
}

/// Reduces `poly` (low degree first) modulo the monic `Φ_n`, leaving the
/// remainder in the first `φ(n)` slots.
fn reduce_in_place(spec: &FieldSpec, poly: &mut Vec<Rational>) {
    let modulus = spec.modulus();
    let deg = spec.degree();
    for k in (deg..poly.len()).rev() {
        if poly[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut poly[k], Rational::zero());
        for (j, m) in modulus[..deg].iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let slot = &mut poly[k - deg + j];
            if m.is_one() {
                *slot -= &c;
            } else if m == &-BigInt::one() {
                *slot += &c;
            } else {
                *slot -= &c * Rational::from_integer(m.clone());
            }
        }
    }
    poly.truncate(deg.max(1));
}

fn trimmed(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trimmed(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trimmed(out)
}

/// Polynomial long division; `den` must be trimmed and nonzero.
fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trimmed(num.to_vec());
    let dl = den.len();
    if rem.len() < dl {
        return (Vec::new(), rem);
    }
    let lead_inv = den[dl - 1].recip();
    let mut quot = vec![Rational::zero(); rem.len() - dl + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dl - 1] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        quot[k] = c;
    }
    rem.truncate(dl - 1);
    (trimmed(quot), trimmed(rem))
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        assert_same(self, rhs);
        FieldElement {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        assert_same(self, rhs);
        FieldElement {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        assert_same(self, rhs);
        let deg = self.spec.degree();
        if deg == 1 {
            return FieldElement {
                spec: self.spec.clone(),
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let mut prod = vec![Rational::zero(); 2 * deg - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        reduce_in_place(&self.spec, &mut prod);
        FieldElement {
            spec: self.spec.clone(),
            coeffs: prod,
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(mut self) -> FieldElement {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.spec.conductor() == other.spec.conductor() && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.spec.conductor().hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A total order on canonical forms, used only to sort deterministically.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.spec
            .conductor()
            .cmp(&other.spec.conductor())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format_element(self))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement[Q(ζ{})]({})", self.spec.conductor(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::{cyclotomic_spec, rational};

    fn q6() -> Arc<FieldSpec> {
        cyclotomic_spec(6).unwrap()
    }

    fn elem(spec: &Arc<FieldSpec>, c0: i64, c1: i64) -> FieldElement {
        FieldElement::from_coeffs(spec, vec![rational(c0, 1), rational(c1, 1)]).unwrap()
    }

    #[test]
    fn generator_relations_in_q6() {
        let k = q6();
        let a = FieldElement::generator(&k);
        assert_eq!(&a * &a, elem(&k, -1, 1));
        assert_eq!(&(&a * &a) * &a, elem(&k, -1, 0));
        assert_eq!(a.pow(6), FieldElement::one(&k));
        let one_plus = elem(&k, 1, 1);
        let one_minus = elem(&k, 1, -1);
        assert_eq!(&one_plus * &one_minus, elem(&k, 2, -1));
    }

    #[test]
    fn generator_powers() {
        let k = q6();
        assert_eq!(FieldElement::power_of_generator(&k, 0), FieldElement::one(&k));
        assert_eq!(FieldElement::power_of_generator(&k, 3), elem(&k, -1, 0));
        assert_eq!(FieldElement::power_of_generator(&k, 5), elem(&k, 1, -1));
        assert_eq!(
            FieldElement::power_of_generator(&k, -1),
            FieldElement::power_of_generator(&k, 5)
        );
        for n in 1..25 {
            let spec = cyclotomic_spec(n).unwrap();
            assert!(FieldElement::power_of_generator(&spec, n as i64).is_one());
            assert!(FieldElement::generator(&spec).pow(n).is_one());
        }
    }

    #[test]
    fn inverses() {
        let k = q6();
        let a = FieldElement::generator(&k);
        assert_eq!(a.inv().unwrap(), elem(&k, 1, -1));
        let two = FieldElement::from_int(&k, 2);
        assert_eq!(two.inv().unwrap(), FieldElement::from_rational(&k, rational(1, 2)));
        assert!(matches!(
            FieldElement::zero(&k).inv(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn inverse_against_norm_in_q6() {
        // (p + q a)(p + q - q a) = p^2 + p q + q^2 because a^2 = a - 1.
        let k = q6();
        for p in -6i64..=6 {
            for q in -6i64..=6 {
                if p == 0 && q == 0 {
                    continue;
                }
                let u = elem(&k, p, q);
                let norm = p * p + p * q + q * q;
                let expected = FieldElement::from_coeffs(
                    &k,
                    vec![rational(p + q, norm), rational(-q, norm)],
                )
                .unwrap();
                assert_eq!(u.inv().unwrap(), expected, "p = {p}, q = {q}");
            }
        }
    }

    #[test]
    fn inverse_in_larger_fields() {
        for n in [5u32, 7, 8, 9, 12, 15] {
            let spec = cyclotomic_spec(n).unwrap();
            let a = FieldElement::generator(&spec);
            let u = &(&a * &a) + &FieldElement::from_int(&spec, 3);
            let v = u.inv().unwrap();
            assert!((&u * &v).is_one(), "n = {n}");
        }
    }

    #[test]
    fn from_coeffs_checks_length() {
        let k = q6();
        assert!(FieldElement::from_coeffs(&k, vec![rational(1, 1)]).is_err());
    }

    #[test]
    #[should_panic]
    fn mixed_fields_panic() {
        let a = FieldElement::one(&cyclotomic_spec(6).unwrap());
        let b = FieldElement::one(&cyclotomic_spec(3).unwrap());
        let _ = &a + &b;
    }
}
