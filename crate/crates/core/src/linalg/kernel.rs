//! Fraction-free Gauss-Jordan elimination over `Z[ζ_n]`.
//!
//! Rows are kept integral and primitive (integer content removed after every
//! update), which is equivalent to exact rational elimination but needs one
//! running gcd per row instead of one gcd per coefficient operation. Each
//! pivot is made a rational integer by multiplying its row with the scaled
//! inverse of the pivot entry.
//!
//! A row of `cols` entries is a flat `Vec<BigInt>` of length `cols * φ(n)`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::numberfield::{FieldElement, FieldSpec, Rational};
use std::sync::Arc;

/// Arithmetic in `Z[ζ_n]` on coefficient slices of length `φ(n)`.
pub(crate) struct IntRing {
    phi: usize,
    // Φ_n without its leading 1, lowest degree first.
    tail: Vec<i64>,
}

impl IntRing {
    pub(crate) fn new(spec: &FieldSpec) -> Self {
        let phi = spec.degree();
        let tail = spec.modulus()[..phi]
            .iter()
            .map(|c| c.to_i64().expect("cyclotomic coefficient fits in i64"))
            .collect();
        IntRing { phi, tail }
    }

    pub(crate) fn phi(&self) -> usize {
        self.phi
    }

    fn is_zero(entry: &[BigInt]) -> bool {
        entry.iter().all(Zero::is_zero)
    }

    fn is_rational(entry: &[BigInt]) -> bool {
        entry[1..].iter().all(Zero::is_zero)
    }

    /// `a * b` reduced modulo `Φ_n`.
    pub(crate) fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let phi = self.phi;
        if Self::is_rational(a) {
            return b.iter().map(|x| x * &a[0]).collect();
        }
        if Self::is_rational(b) {
            return a.iter().map(|x| x * &b[0]).collect();
        }
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        for k in (phi..prod.len()).rev() {
            if prod[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut prod[k]);
            for (j, &m) in self.tail.iter().enumerate() {
                match m {
                    0 => {}
                    1 => prod[k - phi + j] -= &c,
                    -1 => prod[k - phi + j] += &c,
                    m => prod[k - phi + j] -= &c * m,
                }
            }
        }
        prod.truncate(phi);
        prod
    }
}

/// Greatest common divisor of all entries (nonnegative; zero for a zero slice).
/// Switches to machine words once the running gcd is small.
fn content(values: &[BigInt]) -> BigInt {
    let mut big = BigInt::zero();
    let mut small: u64 = 0;
    let mut is_small = false;
    for x in values {
        if x.is_zero() {
            continue;
        }
        if is_small {
            if small == 1 {
                return BigInt::one();
            }
            let r = (x.magnitude() % small).to_u64().expect("remainder below modulus");
            small = small.gcd(&r);
        } else {
            big = big.gcd(x);
            if let Some(s) = big.to_u64() {
                small = s;
                is_small = true;
            }
        }
    }
    if is_small {
        BigInt::from(small)
    } else {
        big
    }
}

fn divide_exact(values: &mut [BigInt], g: &BigInt) {
    if g.is_one() || g.is_zero() {
        return;
    }
    if let Some(s) = g.to_u64() {
        for x in values.iter_mut() {
            if !x.is_zero() {
                *x /= s;
            }
        }
    } else {
        for x in values.iter_mut() {
            if !x.is_zero() {
                *x /= g;
            }
        }
    }
}

fn make_primitive(values: &mut [BigInt]) {
    let g = content(values);
    divide_exact(values, &g);
}

/// Converts field rows to primitive integral rows (each row scaled by a
/// nonzero rational, which preserves the row space).
pub(crate) fn integral_rows(rows: &[&[FieldElement]], phi: usize) -> Vec<Vec<BigInt>> {
    rows.par_iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, e| acc.lcm(&e.denominator_lcm()));
            let mut out = Vec::with_capacity(row.len() * phi);
            for e in row.iter() {
                for c in e.coeffs() {
                    out.push((c.numer() * (&lcm / c.denom())).clone());
                }
            }
            make_primitive(&mut out);
            out
        })
        .collect()
}

fn leading_column(row: &[BigInt], phi: usize) -> Option<usize> {
    row.chunks(phi).position(|e| !IntRing::is_zero(e))
}

/// Result of elimination: pivot rows in increasing pivot-column order. Row
/// `i` divided by its (positive integer) pivot entry is the `i`-th row of the
/// reduced row echelon form.
pub(crate) struct Reduced {
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<BigInt>>,
}

impl Reduced {
    pub(crate) fn to_field_rows(&self, spec: &Arc<FieldSpec>) -> Vec<Vec<FieldElement>> {
        let phi = spec.degree();
        self.rows
            .par_iter()
            .zip(&self.pivots)
            .map(|(row, &pc)| {
                let scale = row[pc * phi].clone();
                row.chunks(phi)
                    .map(|e| {
                        let coeffs = e
                            .iter()
                            .map(|c| Rational::new(c.clone(), scale.clone()))
                            .collect();
                        FieldElement::from_parts(spec.clone(), coeffs)
                    })
                    .collect()
            })
            .collect()
    }
}

/// `row ← (N/g)·row − (e/g)·pivot_row` on entries `start..`, where `N` is the
/// integer pivot, `e` the entry of `row` in the pivot column, and `g` their
/// common integer content. The row is made primitive afterwards.
fn eliminate(ring: &IntRing, row: &mut [BigInt], pivot_row: &[BigInt], pivot_col: usize, start: usize) {
    let phi = ring.phi();
    let entry: Vec<BigInt> = row[pivot_col * phi..(pivot_col + 1) * phi].to_vec();
    if IntRing::is_zero(&entry) {
        return;
    }
    let pivot = &pivot_row[pivot_col * phi];
    let mut g = content(&entry);
    g = g.gcd(pivot);
    let scale = pivot / &g;
    let mult: Vec<BigInt> = entry.iter().map(|c| c / &g).collect();
    for (dst, src) in row[start * phi..]
        .chunks_mut(phi)
        .zip(pivot_row[start * phi..].chunks(phi))
    {
        let dst_zero = IntRing::is_zero(dst);
        let src_zero = IntRing::is_zero(src);
        if src_zero {
            if !dst_zero && !scale.is_one() {
                for x in dst.iter_mut() {
                    *x *= &scale;
                }
            }
            continue;
        }
        let t = ring.mul(&mult, src);
        for (x, y) in dst.iter_mut().zip(t) {
            if scale.is_one() {
                *x -= y;
            } else {
                *x *= &scale;
                *x -= y;
            }
        }
    }
    make_primitive(&mut row[start * phi..]);
}

/// Makes the pivot entry of `row` a positive rational integer.
fn normalize_pivot(ring: &IntRing, spec: &Arc<FieldSpec>, row: &mut [BigInt], pivot_col: usize) {
    let phi = ring.phi();
    let entry = &row[pivot_col * phi..(pivot_col + 1) * phi];
    if !IntRing::is_rational(entry) {
        let as_field = FieldElement::from_parts(
            spec.clone(),
            entry.iter().map(|c| Rational::from_integer(c.clone())).collect(),
        );
        let inv = as_field.inv().expect("pivot is nonzero");
        let lcm = inv.denominator_lcm();
        let adj: Vec<BigInt> = inv
            .coeffs()
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let start = pivot_col * phi;
        row[start..].par_chunks_mut(phi).for_each(|e| {
            if !IntRing::is_zero(e) {
                let prod = ring.mul(&adj, e);
                e.clone_from_slice(&prod);
            }
        });
        make_primitive(&mut row[start..]);
    }
    if row[pivot_col * phi].sign() == Sign::Minus {
        for x in row.iter_mut() {
            *x = -std::mem::take(x);
        }
    }
}

/// Reduced row echelon form of the integral rows. Pivot choice: rows are
/// stably sorted by leading column, then for each column the first remaining
/// row (in that order) with a nonzero entry is the pivot.
pub(crate) fn reduce(spec: &Arc<FieldSpec>, cols: usize, rows: Vec<Vec<BigInt>>) -> Reduced {
    let ring = IntRing::new(spec);
    let phi = ring.phi();
    let mut remaining: Vec<(usize, Vec<BigInt>)> = rows
        .into_iter()
        .filter_map(|r| leading_column(&r, phi).map(|lc| (lc, r)))
        .collect();
    remaining.sort_by_key(|(lc, _)| *lc);
    let mut remaining: Vec<Vec<BigInt>> = remaining.into_iter().map(|(_, r)| r).collect();

    let mut pivots = Vec::new();
    let mut pivot_rows: Vec<Vec<BigInt>> = Vec::new();
    for col in 0..cols {
        if remaining.is_empty() {
            break;
        }
        let Some(idx) = remaining
            .iter()
            .position(|r| !IntRing::is_zero(&r[col * phi..(col + 1) * phi]))
        else {
            continue;
        };
        let mut prow = remaining.remove(idx);
        normalize_pivot(&ring, spec, &mut prow, col);
        remaining
            .par_iter_mut()
            .for_each(|r| eliminate(&ring, r, &prow, col, col));
        remaining.retain(|r| !IntRing::is_zero(&r[col * phi..]));
        pivots.push(col);
        pivot_rows.push(prow);
    }

    // Back substitution: clear entries above each pivot, last pivot first.
    for k in (1..pivot_rows.len()).rev() {
        let (above, rest) = pivot_rows.split_at_mut(k);
        let prow = &rest[0];
        let pc = pivots[k];
        above
            .par_iter_mut()
            .zip(&pivots[..k])
            .for_each(|(r, &own_pc)| eliminate(&ring, r, prow, pc, own_pc));
    }
    for (row, &pc) in pivot_rows.iter_mut().zip(&pivots) {
        if row[pc * phi].is_negative() {
            for x in row.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }
    Reduced {
        pivots,
        rows: pivot_rows,
    }
}
