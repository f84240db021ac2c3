use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The field `Q(ζ_n)`, represented by its conductor and the monic integer
/// cyclotomic polynomial `Φ_n` (coefficients from low to high degree).
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    conductor: u32,
    modulus: Vec<BigInt>,
}

impl FieldSpec {
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Degree of the field over `Q`, i.e. `φ(n)`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Coefficients of `Φ_n`, lowest degree first. The last entry is 1.
    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }
}

/// Builds the field spec for `Q(ζ_n)`.
pub fn cyclotomic_spec(n: u32) -> Result<Arc<FieldSpec>> {
    if n == 0 {
        return Err(Error::InvalidParameter("conductor must be positive".into()));
    }
    Ok(Arc::new(FieldSpec {
        conductor: n,
        modulus: cyclotomic_polynomial(n),
    }))
}

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// `Φ_n = (t^n - 1) / ∏_{d | n, d < n} Φ_d`, coefficients lowest degree first.
///
/// Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n > 0, "cyclotomic polynomial of conductor 0");
    let mut numerator = vec![BigInt::zero(); n as usize + 1];
    numerator[0] = -BigInt::one();
    numerator[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n % d == 0) {
        numerator = exact_div_monic(&numerator, &cyclotomic_polynomial(d));
    }
    numerator
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}
