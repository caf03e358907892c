//! Exact solution of square 0/1 systems `M v = 1` by elimination modulo
//! several primes, Chinese remaindering and rational reconstruction. A
//! reconstructed candidate is accepted only after exact substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Primes just below 2^31, so products fit comfortably in u64.
fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 20..1u64 << 31).rev().filter(|&p| p % 2 == 1 && is_prime(p))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Solves `M v = 1 (mod p)` for dense `M` given as row patterns; `None` if
/// `M` is singular modulo `p`.
fn solve_mod(rows: &[Vec<usize>], k: usize, p: u64) -> Option<Vec<u64>> {
    let w = k + 1;
    let mut m = vec![0u64; k * w];
    for (i, row) in rows.iter().enumerate() {
        for &j in row {
            m[i * w + j] = 1;
        }
        m[i * w + k] = 1;
    }
    for col in 0..k {
        let piv = (col..k).find(|&r| m[r * w + col] != 0)?;
        if piv != col {
            for j in 0..w {
                m.swap(piv * w + j, col * w + j);
            }
        }
        let inv = pow_mod(m[col * w + col], p - 2, p);
        for j in col..w {
            m[col * w + j] = m[col * w + j] * inv % p;
        }
        let (head, tail) = m.split_at_mut(col * w);
        let (prow, rest) = tail.split_at_mut(w);
        for row in head.chunks_mut(w).chain(rest.chunks_mut(w)) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for j in col..w {
                let v = prow[j];
                if v != 0 {
                    row[j] = (row[j] + (p - f) * v) % p;
                }
            }
        }
    }
    Some((0..k).map(|i| m[i * w + k]).collect())
}

/// Smallest `n/d` with `n ≡ a d (mod m)`, `|n|, d <= sqrt(m/2)`.
fn reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m >> 1usize).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(Rational::new(r1, t1))
}

fn check(rows: &[Vec<usize>], v: &[Rational]) -> bool {
    let one = Rational::one();
    rows.iter().all(|row| row.iter().fold(Rational::zero(), |acc, &j| acc + &v[j]) == one)
}

/// Exact solution of `M v = 1` for a nonsingular square 0/1 matrix with the
/// given row patterns, or `None` if the matrix is singular (or the prime
/// budget runs out).
pub(crate) fn solve_unit_rhs(rows: &[Vec<usize>], max_primes: usize) -> Option<Vec<Rational>> {
    let k = rows.len();
    if k == 0 {
        return Some(Vec::new());
    }
    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = vec![BigInt::zero(); k];
    let mut singular_primes = 0;
    #[allow(clippy::explicit_counter_loop)]
    for (used, p) in primes().enumerate() {
        if used >= max_primes || singular_primes > 3 {
            return None;
        }
        let Some(sol) = solve_mod(rows, k, p) else {
            singular_primes += 1;
            continue;
        };
        // CRT: x ≡ residues (mod modulus), x ≡ sol (mod p)
        let pb = BigInt::from(p);
        let inv = BigInt::from(pow_mod((&modulus % &pb).try_into().unwrap_or(0u64), p - 2, p));
        for (r, s) in residues.iter_mut().zip(&sol) {
            let diff = (BigInt::from(*s) - (&*r % &pb)).mod_floor(&pb);
            let t = (diff * &inv).mod_floor(&pb);
            *r += &modulus * t;
        }
        modulus *= &pb;
        let candidate: Option<Vec<Rational>> = residues.iter().map(|r| reconstruct(r, &modulus)).collect();
        if let Some(v) = candidate {
            if check(rows, &v) {
                return Some(v);
            }
        }
    }
    None
}
