//! Closed-form covers for the single-deletion and single-grain channels,
//! evaluated exactly by run-class sums.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::channel::{Side, WeightVec};
use crate::error::{Error, Result};
use crate::rational::{big, int, pow2, Rational};
use crate::runs::{class_sum, count_strings};
use crate::zoo::{run_profile, RunProfile};

use super::{threshold_report, BoundReport, Direction};

/// Largest word length for which explicit per-output vectors are built.
pub const MAX_VECTOR_WORD_LEN: usize = 20;

fn q(v: usize) -> Rational {
    int(v as i64)
}

/// `(1/r) (1 + max(2u - b - 2, 0) / ((r+2)(r+1)))^{-1}`.
pub fn thm1_f(p: &RunProfile) -> Rational {
    let (r, u, b) = (p.runs as i64, p.unit_runs as i64, p.external_units() as i64);
    let excess = (2 * u - b - 2).max(0);
    let factor = Rational::one() + Rational::new(excess.into(), ((r + 2) * (r + 1)).into());
    Rational::one() / (int(r) * factor)
}

/// `(1/r)(1 - (u-b)/r^2)` when `u - b >= 2`, else `1/r`.
pub fn fvy_f(p: &RunProfile) -> Rational {
    let (r, u, b) = (p.runs as i64, p.unit_runs as i64, p.external_units() as i64);
    let inv_r = Rational::new(1.into(), r.into());
    if u - b >= 2 {
        inv_r * (Rational::one() - Rational::new((u - b).into(), (r * r).into()))
    } else {
        inv_r
    }
}

/// `(1/r)(1 + (2u - 2b_R - b_L - 2)/((r+2)(r+1)))^{-1}`.
pub fn grain_f(p: &RunProfile) -> Rational {
    let (r, u) = (p.runs as i64, p.unit_runs as i64);
    let num = 2 * u - 2 * p.b_right() as i64 - p.b_left() as i64 - 2;
    let factor = Rational::one() + Rational::new(num.into(), ((r + 2) * (r + 1)).into());
    Rational::one() / (int(r) * factor)
}

fn check_n(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::InvalidParameter(format!("{what} needs n >= {min}, got {n}")));
    }
    if n > 63 {
        return Err(Error::CapExceeded { what: "word length", size: n, cap: 63 });
    }
    Ok(())
}

fn profile_vector(len: usize, f: impl Fn(&RunProfile) -> Rational) -> Result<WeightVec> {
    if len > MAX_VECTOR_WORD_LEN {
        return Err(Error::CapExceeded { what: "explicit cover word length", size: len, cap: MAX_VECTOR_WORD_LEN });
    }
    let values = (0..1u64 << len).map(|y| f(&run_profile(y, len))).collect();
    Ok(WeightVec::new(Side::Output, values))
}

/// Weight of the cover `z_y = f(r_y, u_y, b_y)` of the `n`-bit deletion
/// channel, summed over `y ∈ [2]^{n-1}`.
pub fn deletion_cover_thm1_weight(n: usize) -> Result<BoundReport> {
    check_n(n, 2, "deletion cover")?;
    Ok(BoundReport::new("thm1", Direction::UpperOnP, class_sum(n - 1, &thm1_f)).with_n(n))
}

/// The per-output vector behind [`deletion_cover_thm1_weight`].
pub fn deletion_thm1_vector(n: usize) -> Result<WeightVec> {
    check_n(n, 2, "deletion cover")?;
    profile_vector(n - 1, thm1_f)
}

pub fn deletion_fvy_weight(n: usize) -> Result<BoundReport> {
    check_n(n, 2, "deletion cover")?;
    Ok(BoundReport::new("fvy", Direction::UpperOnP, class_sum(n - 1, &fvy_f)).with_n(n))
}

pub fn deletion_fvy_vector(n: usize) -> Result<WeightVec> {
    check_n(n, 2, "deletion cover")?;
    profile_vector(n - 1, fvy_f)
}

/// `(2^n - 2)/(n - 1)`, the weight of one local-degree step from `t = 1`.
pub fn deletion_kk(n: usize) -> Result<BoundReport> {
    check_n(n, 2, "deletion kk")?;
    let value = Rational::new(pow2(n as u32) - 2, BigInt::from(n - 1));
    Ok(BoundReport::new("kk", Direction::UpperOnP, value).with_n(n))
}

/// `(2^n/(n+1))(1 + 26/(n(n-1)))`.
pub fn deletion_thm2_bound(n: usize) -> Result<BoundReport> {
    check_n(n, 2, "deletion thm2")?;
    let value = big(pow2(n as u32)) / q(n + 1) * (Rational::one() + Rational::new(26.into(), (n * (n - 1)).into()));
    Ok(BoundReport::new("thm2", Direction::UpperOnP, value).with_n(n))
}

/// `((2^n - 2)/(n+1))(1 + 1/(n-1) - 3/((n-1)(n-2)))`, a lower bound on the
/// weight of the FVY cover.
pub fn fvy_weight_lower(n: usize) -> Result<Rational> {
    check_n(n, 3, "fvy lower bound")?;
    let base = Rational::new(pow2(n as u32) - 2, BigInt::from(n + 1));
    Ok(base
        * (Rational::one() + Rational::new(1.into(), (n - 1).into())
            - Rational::new(3.into(), ((n - 1) * (n - 2)).into())))
}

/// Outcome of checking the closed-form bound on `κ*` for one `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Thm2Check {
    pub n: usize,
    pub bound: Rational,
    pub thm1_weight: Rational,
    /// The closed form dominates the run-class cover it was derived from.
    pub dominates_thm1: bool,
}

pub fn deletion_thm2_check(n: usize) -> Result<Thm2Check> {
    let bound = deletion_thm2_bound(n)?.exact;
    let thm1_weight = deletion_cover_thm1_weight(n)?.exact;
    Ok(Thm2Check { n, dominates_thm1: thm1_weight <= bound, bound, thm1_weight })
}

/// `(|X| - |S|)/d + |S|` on the `n`-bit deletion channel, where `S` holds the
/// inputs with fewer than `d` runs, counted in closed form.
pub fn dsu_threshold_deletion(n: usize, d: usize) -> Result<BoundReport> {
    check_n(n, 2, "deletion threshold")?;
    if d == 0 {
        return Err(Error::NotPositive("threshold d = 0".into()));
    }
    let small: i128 = (1..d.min(n + 1)).map(|r| count_strings(n, r, None, None)).sum();
    Ok(threshold_report(pow2(n as u32), BigInt::from(small), &q(d)).with_n(n))
}

/// Weight of the grain cover over `y ∈ [2]^n` via run-class sums.
pub fn grain_thm4_weight(n: usize) -> Result<BoundReport> {
    check_n(n, 2, "grain cover")?;
    Ok(BoundReport::new("thm4", Direction::UpperOnP, class_sum(n, &grain_f)).with_n(n))
}

/// The explicit grain cover and its weight.
pub fn grain_cover_thm4(n: usize) -> Result<(WeightVec, BoundReport)> {
    check_n(n, 2, "grain cover")?;
    let z = profile_vector(n, grain_f)?;
    let report = BoundReport::new("thm4", Direction::UpperOnP, z.total()).with_n(n);
    Ok((z, report))
}

/// `weight(n) (n+2) / 2^{n+1}`, which tends to 1.
pub fn grain_thm4_normalized(n: usize) -> Result<Rational> {
    Ok(grain_thm4_weight(n)?.exact * q(n + 2) / big(pow2(n as u32 + 1)))
}

/// Sum of `f` over run profiles of all words of length `len` by enumeration.
pub fn enumerated_sum(len: usize, f: impl Fn(&RunProfile) -> Rational) -> Rational {
    (0..1u64 << len).fold(Rational::zero(), |acc, y| acc + f(&run_profile(y, len)))
}
