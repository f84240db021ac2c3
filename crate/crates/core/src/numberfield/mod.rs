//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! Elements are stored as dense coefficient vectors in the power basis
//! `1, a, a^2, ..., a^(φ(n)-1)` where `a = ζ_n`, and are reduced modulo the
//! `n`-th cyclotomic polynomial after every operation.

mod cyclotomic;
mod element;
mod text;

pub use cyclotomic::{cyclotomic_polynomial, cyclotomic_spec, euler_phi, FieldSpec};
pub(crate) use element::check_specs;
pub use element::FieldElement;
pub use text::{format_element, parse_element};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

#[cfg(test)]
pub(crate) fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
