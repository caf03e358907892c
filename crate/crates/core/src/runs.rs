//! Run-class combinatorics of binary words.
//!
//! Every word of length `n` falls into a class `(r, u, b_L, b_R)` (see
//! [`RunProfile`]). Sums of class functions over `[2]^n` collapse to
//! `O(n^2)` terms weighted by class sizes, and the averaging operators `E_r`
//! and `E_{u,b}` below express the same sums as nested expectations.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::{big, int, pow2, Rational};
use crate::zoo::RunProfile;

/// Binomial coefficient with the polynomial convention:
/// `C(m, j) = m (m-1) ... (m-j+1) / j!` for `j >= 0` (so `m` may be negative)
/// and `C(m, j) = 0` for `j < 0`.
pub fn gbinom(m: i64, j: i64) -> i128 {
    if j < 0 {
        return 0;
    }
    let mut c: i128 = 1;
    for i in 0..j {
        c = c.checked_mul((m - i) as i128).expect("binomial overflow") / (i as i128 + 1);
    }
    c
}

fn gbinom_q(m: i64, j: i64) -> Rational {
    big(BigInt::from(gbinom(m, j)))
}

/// Number of words in `[2]^n` with `r` runs, optionally also with `u` unit
/// runs and `b` unit runs at the ends.
///
/// For `r = 1` the lone run spans the word; it is a unit run (at both ends,
/// `b = 2`) only when `n = 1`.
pub fn count_strings(n: usize, r: usize, u: Option<usize>, b: Option<usize>) -> i128 {
    if n == 0 || r == 0 || r > n {
        return 0;
    }
    let (n, r) = (n as i64, r as i64);
    match (u, b) {
        (None, None) => 2 * gbinom(n - 1, n - r),
        (Some(u), None) => {
            let u = u as i64;
            2 * gbinom(n - r - 1, n - 2 * r + u) * gbinom(r, r - u)
        }
        (Some(u), Some(b)) => {
            if b > 2 {
                return 0;
            }
            if r == 1 {
                let canonical = if n == 1 { (1, 2) } else { (0, 0) };
                return if (u, b) == canonical { 2 } else { 0 };
            }
            let (u, b) = (u as i64, b as i64);
            2 * gbinom(n - r - 1, n - 2 * r + u) * gbinom(r - 2, u - b) * gbinom(2, b)
        }
        (None, Some(b)) => (0..=r as usize).map(|u| count_strings(n as usize, r as usize, Some(u), Some(b))).sum(),
    }
}

/// Number of words in `[2]^n` with exactly the given run profile.
pub fn count_profile(n: usize, p: &RunProfile) -> i128 {
    if n == 0 || p.runs == 0 || p.runs > n || p.unit_runs > p.runs {
        return 0;
    }
    if p.runs == 1 {
        let canonical = if n == 1 { RunProfile::new(1, 1, true, true) } else { RunProfile::new(1, 0, false, false) };
        return if *p == canonical { 2 } else { 0 };
    }
    let (n, r, u) = (n as i64, p.runs as i64, p.unit_runs as i64);
    let b = p.external_units() as i64;
    2 * gbinom(n - r - 1, n - 2 * r + u) * gbinom(r - 2, u - b)
}

/// Every run profile occurring in `[2]^n` together with its class size.
pub fn profile_classes(n: usize) -> Vec<(RunProfile, i128)> {
    let mut out = Vec::new();
    for r in 1..=n {
        for u in 0..=r {
            for (left, right) in [(false, false), (true, false), (false, true), (true, true)] {
                let p = RunProfile::new(r, u, left, right);
                let c = count_profile(n, &p);
                if c != 0 {
                    out.push((p, c));
                }
            }
        }
    }
    out
}

/// A function of the run class of a word.
pub trait ClassFunction {
    fn eval(&self, p: &RunProfile) -> Rational;
}

impl<F: Fn(&RunProfile) -> Rational> ClassFunction for F {
    fn eval(&self, p: &RunProfile) -> Rational {
        self(p)
    }
}

/// `Σ_{x ∈ [2]^n} f(profile(x))` computed over run classes.
pub fn class_sum<F: ClassFunction + ?Sized>(n: usize, f: &F) -> Rational {
    profile_classes(n).into_iter().fold(Rational::zero(), |acc, (p, c)| acc + f.eval(&p) * big(BigInt::from(c)))
}

/// `E_r[g(r)] = 2^{-(n-1)} Σ_{r>=1} C(n-1, n-r) g(r)`: the mean of `g` over
/// the run count of a uniform word of length `n`.
pub fn expectation_r(n: usize, g: impl Fn(usize) -> Rational) -> Rational {
    assert!(n >= 1);
    let n_i = n as i64;
    let total = (1..=n).fold(Rational::zero(), |acc, r| acc + gbinom_q(n_i - 1, n_i - r as i64) * g(r));
    total / big(pow2(n as u32 - 1))
}

/// `E_{u,b}[h(u, b)]` over words of length `n` with `r` runs; for `r = 1`
/// this is `h(0, 0)`.
pub fn expectation_ub(n: usize, r: usize, h: impl Fn(usize, usize) -> Rational) -> Rational {
    assert!(r >= 1 && r <= n);
    if r == 1 {
        return h(0, 0);
    }
    let (n_i, r_i) = (n as i64, r as i64);
    let mut total = Rational::zero();
    for u in 0..=r {
        for b in 0..=2usize {
            let w = gbinom(n_i - r_i - 1, n_i - 2 * r_i + u as i64)
                * gbinom(r_i - 2, u as i64 - b as i64)
                * gbinom(2, b as i64);
            if w != 0 {
                total += big(BigInt::from(w)) * h(u, b);
            }
        }
    }
    total / gbinom_q(n_i - 1, n_i - r_i)
}

/// `2^n E_r[E_{u,b}[f(r, u, b)]]`, the nested-expectation form of a class sum
/// for functions of `(r, u, b)` only.
pub fn nested_class_sum(n: usize, f: impl Fn(usize, usize, usize) -> Rational) -> Rational {
    big(pow2(n as u32)) * expectation_r(n, |r| expectation_ub(n, r, |u, b| f(r, u, b)))
}

/// Checks `E_r[1 / C(r+k-1, r-1)] = Σ_{r>=1} C(n+k-1, n-r) / (2^{n-1} C(n+k-1, n-1))`
/// and that this value is at most `2^k / C(n+k-1, n-1)`.
pub fn verify_identity_r(n: usize, k: usize) -> bool {
    let (n_i, k_i) = (n as i64, k as i64);
    let lhs = expectation_r(n, |r| Rational::one() / gbinom_q(r as i64 + k_i - 1, r as i64 - 1));
    let top = (1..=n_i).fold(Rational::zero(), |acc, r| acc + gbinom_q(n_i + k_i - 1, n_i - r));
    let base = gbinom_q(n_i + k_i - 1, n_i - 1);
    let middle = top / (big(pow2(n as u32 - 1)) * &base);
    let bound = big(pow2(k as u32)) / base;
    lhs == middle && middle <= bound
}

/// Checks `E_{u,b}[C(u, u-k)] = C(r, r-k) C(r-1, r-k-1) / C(n-1, n-k-1)`.
pub fn verify_identity_u(n: usize, r: usize, k: usize) -> bool {
    let (n_i, r_i, k_i) = (n as i64, r as i64, k as i64);
    let lhs = expectation_ub(n, r, |u, _| gbinom_q(u as i64, u as i64 - k_i));
    let den = gbinom_q(n_i - 1, n_i - k_i - 1);
    if den.is_zero() {
        return false;
    }
    lhs == gbinom_q(r_i, r_i - k_i) * gbinom_q(r_i - 1, r_i - k_i - 1) / den
}

/// Checks `E_{u,b}[b] = 2 (r-1) / (n-1)`.
pub fn verify_identity_b(n: usize, r: usize) -> bool {
    assert!(n >= 2);
    let lhs = expectation_ub(n, r, |_, b| int(b as i64));
    lhs == int(2 * (r as i64 - 1)) / int(n as i64 - 1)
}
