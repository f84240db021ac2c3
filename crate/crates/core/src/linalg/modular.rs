//! Multimodular nullspaces over `Q(ζ_n)` with exact verification.
//!
//! For a prime `p ≡ 1 (mod n)`, `Z[ζ_n]` maps onto `F_p` in `φ(n)` ways
//! (`ζ ↦ ω^k`, `gcd(k, n) = 1`). A minor that is nonzero modulo `p` is nonzero
//! over `Q(ζ_n)`, so `cols − rank_p` bounds the kernel dimension from above.
//! Kernel vectors are rebuilt by Chinese remaindering and rational
//! reconstruction and then checked exactly; independent exact kernel vectors
//! meeting the bound form a basis of the kernel.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::sync::Arc;

use super::kernel::IntRing;
use crate::numberfield::{FieldElement, FieldSpec, Rational};

const MAX_PRIMES: usize = 160;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for b in BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A prime `p ≡ 1 (mod n)` with the images of `ζ` under every embedding and
/// the inverse Vandermonde matrix turning embedding values back into
/// power-basis coefficients.
struct SplitPrime {
    p: u64,
    roots: Vec<u64>,
    vandermonde_inv: Vec<Vec<u64>>,
}

impl SplitPrime {
    fn new(p: u64, n: u64, phi: usize) -> Option<Self> {
        let factors = prime_factors(n);
        let omega = (2..p).find_map(|h| {
            let w = pow_mod(h, (p - 1) / n, p);
            factors.iter().all(|q| pow_mod(w, n / q, p) != 1).then_some(w)
        })?;
        let roots: Vec<u64> = (1..=n)
            .filter(|k| k.gcd(&n) == 1)
            .map(|k| pow_mod(omega, k, p))
            .collect();
        debug_assert_eq!(roots.len(), phi);
        let v: Vec<Vec<u64>> = roots
            .iter()
            .map(|&r| (0..phi as u64).map(|i| pow_mod(r, i, p)).collect())
            .collect();
        let vandermonde_inv = invert_mod(v, p)?;
        Some(SplitPrime {
            p,
            roots,
            vandermonde_inv,
        })
    }
}

fn invert_mod(mut a: Vec<Vec<u64>>, p: u64) -> Option<Vec<Vec<u64>>> {
    let n = a.len();
    for (i, row) in a.iter_mut().enumerate() {
        row.extend((0..n).map(|j| u64::from(i == j)));
    }
    let (pivots, rows) = rref_mod(a, 2 * n, p);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Primes `≡ 1 (mod n)` below `2^62`, in decreasing order.
fn split_primes(n: u64, phi: usize) -> impl Iterator<Item = SplitPrime> {
    let top = (1u64 << 62) / n;
    (1..top)
        .rev()
        .map(move |k| k * n + 1)
        .filter(|&p| is_prime_u64(p))
        .filter_map(move |p| SplitPrime::new(p, n, phi))
}

/// Reduced row echelon form over `F_p`.
fn rref_mod(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(idx) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, idx);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank][col..].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let (head, tail) = rows.split_at_mut(rank);
        let (prow, rest) = tail.split_first_mut().expect("pivot row");
        let clear = |r: &mut Vec<u64>| {
            let f = r[col];
            if f != 0 {
                let f = p - f;
                for (x, &y) in r[col..].iter_mut().zip(&prow[col..]) {
                    if y != 0 {
                        *x = ((u128::from(*x) + u128::from(f) * u128::from(y)) % u128::from(p)) as u64;
                    }
                }
            }
        };
        head.par_iter_mut().for_each(clear);
        rest.par_iter_mut().for_each(clear);
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (pivots, rows)
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let r = (x.magnitude() % p).to_u64().expect("below modulus");
    if x.sign() == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

/// Images of the integral rows under the embedding `ζ ↦ root`.
fn embed_rows(rows: &[Vec<BigInt>], phi: usize, prime: &SplitPrime, root: u64) -> Vec<Vec<u64>> {
    let p = prime.p;
    let powers: Vec<u64> = (0..phi as u64).map(|i| pow_mod(root, i, p)).collect();
    rows.par_iter()
        .map(|row| {
            row.chunks(phi)
                .map(|e| {
                    e.iter().zip(&powers).fold(0u64, |acc, (c, &w)| {
                        if c.is_zero() {
                            acc
                        } else {
                            (acc + mul_mod(bigint_mod(c, p), w, p)) % p
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Kernel vectors (one per free column, `1` there and `0` at the other free
/// columns) in power-basis coordinates modulo `p`, flattened.
fn kernel_mod(
    rows: &[Vec<BigInt>],
    cols: usize,
    phi: usize,
    prime: &SplitPrime,
) -> Option<(Vec<usize>, Vec<Vec<u64>>)> {
    let p = prime.p;
    let mut pivots: Option<Vec<usize>> = None;
    let mut images: Vec<Vec<Vec<u64>>> = Vec::with_capacity(phi);
    for &root in &prime.roots {
        let (piv, reduced) = rref_mod(embed_rows(rows, phi, prime, root), cols, p);
        match &pivots {
            Some(prev) if *prev != piv => return None,
            _ => pivots = Some(piv.clone()),
        }
        let mut is_pivot = vec![false; cols];
        for &c in &piv {
            is_pivot[c] = true;
        }
        let vectors = (0..cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0u64; cols];
                v[f] = 1;
                for (i, &c) in piv.iter().enumerate() {
                    v[c] = (p - reduced[i][f]) % p;
                }
                v
            })
            .collect();
        images.push(vectors);
    }
    let pivots = pivots?;
    let count = images[0].len();
    let coeffs = (0..count)
        .map(|k| {
            let mut flat = Vec::with_capacity(cols * phi);
            for c in 0..cols {
                for inv_row in &prime.vandermonde_inv {
                    let value = inv_row
                        .iter()
                        .zip(&images)
                        .fold(0u64, |acc, (&w, img)| (acc + mul_mod(w, img[k][c], p)) % p);
                    flat.push(value);
                }
            }
            flat
        })
        .collect();
    Some((pivots, coeffs))
}

/// `n/d` with `n ≡ d·x (mod m)`, `|n|, d ≤ sqrt(m/2)`.
fn rational_reconstruct(x: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Rational> {
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound {
        return None;
    }
    if !r1.is_zero() && !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Exact check that each integral row annihilates `v`.
fn annihilates(ring: &IntRing, rows: &[Vec<BigInt>], v: &[FieldElement]) -> bool {
    let phi = ring.phi();
    let lcm = v.iter().fold(BigInt::one(), |acc, e| acc.lcm(&e.denominator_lcm()));
    let int_v: Vec<BigInt> = v
        .iter()
        .flat_map(|e| e.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect::<Vec<_>>())
        .collect();
    rows.par_iter().all(|row| {
        let mut acc = vec![BigInt::zero(); phi];
        for (a, b) in row.chunks(phi).zip(int_v.chunks(phi)) {
            if a.iter().all(Zero::is_zero) || b.iter().all(Zero::is_zero) {
                continue;
            }
            for (s, t) in acc.iter_mut().zip(ring.mul(a, b)) {
                *s += t;
            }
        }
        acc.iter().all(Zero::is_zero)
    })
}

/// The kernel of the integral rows, with its rank, or `None` if
/// reconstruction did not verify within the prime budget.
pub(crate) fn nullspace_multimodular(
    spec: &Arc<FieldSpec>,
    cols: usize,
    rows: &[Vec<BigInt>],
) -> Option<(usize, Vec<Vec<FieldElement>>)> {
    let phi = spec.degree();
    let n = u64::from(spec.conductor());
    let ring = IntRing::new(spec);
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut modulus = BigInt::one();
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut previous: Option<Vec<Vec<Rational>>> = None;

    for prime in split_primes(n, phi).take(MAX_PRIMES) {
        let Some((pivots, coeffs)) = kernel_mod(rows, cols, phi, &prime) else {
            continue;
        };
        let key = (pivots.len(), pivots);
        let better = match &best {
            None => true,
            Some((rank, piv)) => key.0 > *rank || (key.0 == *rank && key.1 < *piv),
        };
        if better {
            best = Some(key);
            modulus = BigInt::one();
            residues = coeffs.iter().map(|v| vec![BigInt::zero(); v.len()]).collect();
            previous = None;
        } else if best.as_ref() != Some(&key) {
            continue;
        }
        let rank = best.as_ref().expect("set above").0;
        if rank == cols {
            return Some((rank, Vec::new()));
        }

        let pb = BigInt::from(prime.p);
        let m_inv = BigInt::from(inv_mod(bigint_mod(&modulus, prime.p), prime.p));
        residues.par_iter_mut().zip(&coeffs).for_each(|(acc, new)| {
            for (a, &b) in acc.iter_mut().zip(new) {
                let diff = (BigInt::from(b) - &*a).mod_floor(&pb);
                *a += &modulus * ((diff * &m_inv) % &pb);
            }
        });
        modulus *= &pb;

        let bound = (&modulus / 2u32).sqrt();
        let rebuilt: Option<Vec<Vec<Rational>>> = residues
            .par_iter()
            .map(|v| v.iter().map(|x| rational_reconstruct(x, &modulus, &bound)).collect())
            .collect();
        let Some(rebuilt) = rebuilt else {
            continue;
        };
        if previous.as_ref() != Some(&rebuilt) {
            previous = Some(rebuilt);
            continue;
        }
        let vectors: Vec<Vec<FieldElement>> = rebuilt
            .iter()
            .map(|flat| {
                flat.chunks(phi)
                    .map(|c| FieldElement::from_parts(spec.clone(), c.to_vec()))
                    .collect()
            })
            .collect();
        if vectors.iter().all(|v| annihilates(&ring, rows, v)) {
            log::debug!("multimodular kernel verified after {} bits", modulus.bits());
            return Some((rank, vectors));
        }
        log::debug!("multimodular kernel failed verification at {} bits", modulus.bits());
    }
    None
}
