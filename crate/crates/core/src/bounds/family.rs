//! The q-ary erasure/substitution family interpolating between the Hamming
//! (`a = 0`) and Singleton (`b = 0`) bounds.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{ln_rational, Rational};

use super::{BoundReport, Direction};

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn hs_value(q: usize, n: usize, a: usize, b: usize) -> Rational {
    let kept = n - a;
    let qm1 = BigInt::from(q - 1);
    let sphere = (0..=b.min(kept)).fold(BigInt::zero(), |acc, i| acc + binomial(kept, i) * qm1.pow(i as u32));
    Rational::new(BigInt::from(q).pow(kept as u32), sphere)
}

fn check_family(q: usize, n: usize, a: usize) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("alphabet size {q} < 2")));
    }
    if a > n {
        return Err(Error::InvalidParameter(format!("cannot erase {a} of {n} symbols")));
    }
    Ok(())
}

/// `q^{n-a} / Σ_{i<=b} C(n-a, i)(q-1)^i`, the exact `κ*` of the channel that
/// erases `a` symbols and substitutes up to `b` of the rest.
pub fn hs_kappa(q: usize, n: usize, a: usize, b: usize) -> Result<BoundReport> {
    check_family(q, n, a)?;
    Ok(BoundReport::new("hs-kappa", Direction::UpperOnP, hs_value(q, n, a, b))
        .with_n(n)
        .with_param("q", q)
        .with_param("a", a)
        .with_param("b", b))
}

/// When `b >= 1`, `a + 2 <= n` and `a + qb <= n - 1`, whether
/// `κ*(q,n,a,b) <= κ*(q,n,a+2,b-1)`; `None` outside that range.
pub fn hs_split_inequality_holds(q: usize, n: usize, a: usize, b: usize) -> Option<bool> {
    if q < 2 || b == 0 || a + 2 > n || a + q * b > n.saturating_sub(1) || n == 0 {
        return None;
    }
    Some(hs_value(q, n, a, b) <= hs_value(q, n, a + 2, b - 1))
}

fn check_split(q: usize, n: usize, s: usize) -> Result<()> {
    check_family(q, n, 0)?;
    if s % 2 != 0 || s + 1 > n {
        return Err(Error::InvalidParameter(format!("need s even and s <= n - 1, got s = {s}, n = {n}")));
    }
    Ok(())
}

/// `argmin_{0<=b<=s/2} κ*(q,n,s-2b,b)` in closed form: `s/2` when
/// `qs <= 2(n-1)`, else `⌊(n-1-s)/(q-2)⌋`. At a tie the larger `b` is returned.
pub fn hs_optimal_split(q: usize, n: usize, s: usize) -> Result<(usize, BoundReport)> {
    check_split(q, n, s)?;
    let b = if q * s <= 2 * (n - 1) { s / 2 } else { (n - 1 - s) / (q - 2) };
    Ok((b, split_report(q, n, s, b)))
}

/// The same minimizer by scanning every `b` (largest minimizer on ties).
pub fn hs_optimal_split_scan(q: usize, n: usize, s: usize) -> Result<(usize, BoundReport)> {
    check_split(q, n, s)?;
    let mut best = 0;
    let mut best_value = hs_value(q, n, s, 0);
    for b in 1..=s / 2 {
        let v = hs_value(q, n, s - 2 * b, b);
        if v <= best_value {
            best = b;
            best_value = v;
        }
    }
    Ok((best, split_report(q, n, s, best)))
}

fn split_report(q: usize, n: usize, s: usize, b: usize) -> BoundReport {
    BoundReport::new("hs-optimal", Direction::UpperOnP, hs_value(q, n, s - 2 * b, b))
        .with_n(n)
        .with_param("q", q)
        .with_param("s", s)
        .with_param("b", b)
}

/// Largest even `s <= min(⌊δn⌋, n-1)`.
pub fn family_s(delta: f64, n: usize) -> usize {
    let s = ((delta * n as f64).floor().max(0.0) as usize).min(n.saturating_sub(1));
    s - s % 2
}

/// `(1/n) ln min_b κ*(q,n,s-2b,b)` at `s = ⌊δn⌋` adjusted to be even.
pub fn hs_asymptote(q: usize, delta: f64, n: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::InvalidParameter(format!("δ = {delta} outside [0, 1]")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n = 0".into()));
    }
    let (_, report) = hs_optimal_split(q, n, family_s(delta, n))?;
    Ok(ln_rational(&report.exact) / n as f64)
}

/// Limit exponent `(1-δ) ln(q-1)` of the optimized bound for `δ >= 2/q`.
pub fn hs_limit_exponent(q: usize, delta: f64) -> f64 {
    (1.0 - delta) * ((q - 1) as f64).ln()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyPoint {
    pub s: usize,
    pub delta: f64,
    pub hamming: Rational,
    pub singleton: Rational,
    pub optimized: Rational,
    pub b_star: usize,
    pub hamming_exp: f64,
    pub singleton_exp: f64,
    pub optimized_exp: f64,
}

/// One point per even `s` in `0..=n-1`.
pub fn family_curve(q: usize, n: usize) -> Result<Vec<FamilyPoint>> {
    check_family(q, n, 0)?;
    if n == 0 {
        return Err(Error::InvalidParameter("n = 0".into()));
    }
    let exp = |v: &Rational| ln_rational(v) / n as f64;
    (0..n)
        .step_by(2)
        .map(|s| {
            let (b_star, opt) = hs_optimal_split(q, n, s)?;
            let hamming = hs_value(q, n, 0, s / 2);
            let singleton = hs_value(q, n, s, 0);
            Ok(FamilyPoint {
                s,
                delta: s as f64 / n as f64,
                hamming_exp: exp(&hamming),
                singleton_exp: exp(&singleton),
                optimized_exp: exp(&opt.exact),
                hamming,
                singleton,
                optimized: opt.exact,
                b_star,
            })
        })
        .collect()
}
