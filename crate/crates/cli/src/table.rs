//! The single-deletion bound table and the erasure/substitution curve.

use std::fmt::Write as _;
use std::io::Write;

use anyhow::{bail, Result};
use num_bigint::BigInt;
use rayon::prelude::*;

use combichannel::bounds::{
    deletion_cover_thm1_weight, deletion_fvy_weight, deletion_kk, deletion_thm2_bound, family_curve,
};
use combichannel::lp::{fractional_packing, LpConfig};
use combichannel::rational::floor;
use combichannel::zoo::{deletion_channel, vt_code};

use crate::{FamilyArgs, TableArgs};

/// Printed in place of a value that was not computed.
pub const MISSING: &str = "—";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    pub vt_size: usize,
    pub p_star: Option<BigInt>,
    pub thm1_floor: BigInt,
    pub fvy_floor: BigInt,
    pub kk_floor: BigInt,
    pub thm2_floor: BigInt,
}

impl TableRow {
    /// `p*` is solved exactly only when `n <= pstar_cap`.
    pub fn compute(n: usize, pstar_cap: usize) -> Result<TableRow> {
        let p_star = if n <= pstar_cap {
            Some(floor(&fractional_packing(&deletion_channel(n)?, &LpConfig::default())?.value))
        } else {
            None
        };
        Ok(TableRow {
            n,
            vt_size: vt_code(n, 0)?.len(),
            p_star,
            thm1_floor: deletion_cover_thm1_weight(n)?.floor,
            fvy_floor: deletion_fvy_weight(n)?.floor,
            kk_floor: deletion_kk(n)?.floor,
            thm2_floor: deletion_thm2_bound(n)?.floor,
        })
    }

    /// Hard violations: the code must fit under every bound.
    pub fn violations(&self) -> Vec<String> {
        let vt = BigInt::from(self.vt_size);
        let mut out = Vec::new();
        let uppers =
            [("thm1", &self.thm1_floor), ("fvy", &self.fvy_floor), ("kk", &self.kk_floor), ("thm2", &self.thm2_floor)];
        for (name, v) in uppers.into_iter().chain(self.p_star.iter().map(|p| ("p_star", p))) {
            if *v < vt {
                out.push(format!("n={}: {name} = {v} < |VT_0| = {vt}", self.n));
            }
        }
        if let Some(p) = &self.p_star {
            if *p > self.thm1_floor {
                out.push(format!("n={}: p* = {p} > thm1 = {}", self.n, self.thm1_floor));
            }
        }
        out
    }

    /// Soft check: the run-class cover should beat the FVY cover from n = 12 on.
    pub fn flags(&self) -> Vec<String> {
        if self.n >= 12 && self.thm1_floor > self.fvy_floor {
            vec![format!("n={}: thm1 = {} exceeds fvy = {}", self.n, self.thm1_floor, self.fvy_floor)]
        } else {
            Vec::new()
        }
    }
}

pub const TABLE_CSV_HEADER: &str = "n,vt0,p_star,thm1,fvy,kk,thm2";

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut s = String::from(TABLE_CSV_HEADER);
    s.push('\n');
    for r in rows {
        let p = r.p_star.as_ref().map_or_else(|| MISSING.to_owned(), |v| v.to_string());
        let _ =
            writeln!(s, "{},{},{p},{},{},{},{}", r.n, r.vt_size, r.thm1_floor, r.fvy_floor, r.kk_floor, r.thm2_floor);
    }
    s
}

pub fn deletion_table(n_min: usize, n_max: usize, pstar_cap: usize) -> Result<Vec<TableRow>> {
    if n_min < 3 || n_min > n_max || n_max > 30 {
        bail!("need 3 <= n-min <= n-max <= 30, got {n_min}..{n_max}");
    }
    (n_min..=n_max).into_par_iter().map(|n| TableRow::compute(n, pstar_cap)).collect()
}

pub(crate) fn cmd_deletion_table(args: &TableArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    let rows = deletion_table(args.n_min, args.n_max, args.pstar_cap)?;
    let mut ok = true;
    for r in &rows {
        for f in r.flags() {
            writeln!(err, "flag: {f}")?;
        }
        for v in r.violations() {
            writeln!(err, "violation: {v}")?;
            ok = false;
        }
    }
    let text = table_csv(&rows);
    match &args.csv {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(ok)
}

pub const FAMILY_CSV_HEADER: &str =
    "s,delta,b_star,hamming,singleton,optimized,hamming_exp,singleton_exp,optimized_exp";

/// Values are floored; exponents are `(1/n) ln` of the exact values.
pub fn family_csv(q: usize, n: usize) -> Result<String> {
    let mut s = String::from(FAMILY_CSV_HEADER);
    s.push('\n');
    for p in family_curve(q, n)? {
        let _ = writeln!(
            s,
            "{},{:.6},{},{},{},{},{:.6},{:.6},{:.6}",
            p.s,
            p.delta,
            p.b_star,
            floor(&p.hamming),
            floor(&p.singleton),
            floor(&p.optimized),
            p.hamming_exp,
            p.singleton_exp,
            p.optimized_exp
        );
    }
    Ok(s)
}

pub(crate) fn cmd_family(args: &FamilyArgs, out: &mut dyn Write) -> Result<bool> {
    let text = family_csv(args.q, args.n)?;
    match &args.csv {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(true)
}
