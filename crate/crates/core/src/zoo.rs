//! Concrete channels: single deletion, single grain, q-ary erasure plus
//! substitution, random test channels. Also run statistics of binary words
//! and Varshamov-Tenengolts codes.
//!
//! Binary words of length `n` are indexed by the integer whose bit `i` holds
//! position `i`; position 0 is printed leftmost.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use crate::channel::{Channel, Labels};
use crate::error::{Error, Result};
use crate::runs::gbinom;

/// Largest word length for which deletion and grain channels are built explicitly.
pub const MAX_EXPLICIT_WORD_LEN: usize = 20;

/// Largest input alphabet `q^n` for explicit erasure/substitution channels.
pub const MAX_ERASURE_INPUTS: u64 = 1 << 20;

/// Edge budget for explicit erasure/substitution channels.
pub const MAX_ERASURE_EDGES: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinaryWord {
    bits: u64,
    len: usize,
}

impl BinaryWord {
    pub fn new(bits: u64, len: usize) -> Result<BinaryWord> {
        if len == 0 || len > 64 {
            return Err(Error::InvalidParameter(format!("word length {len} not in 1..=64")));
        }
        if len < 64 && bits >> len != 0 {
            return Err(Error::InvalidParameter(format!("bits {bits:#x} exceed length {len}")));
        }
        Ok(BinaryWord { bits, len })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn run_profile(&self) -> RunProfile {
        run_profile(self.bits, self.len)
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' if i < 64 => bits |= 1 << i,
                _ => return Err(Error::InvalidParameter(format!("not a binary word: {s:?}"))),
            }
        }
        BinaryWord::new(bits, s.chars().count())
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&word_to_string(self.bits, self.len))
    }
}

pub fn word_to_string(bits: u64, len: usize) -> String {
    (0..len).map(|i| if bits >> i & 1 == 1 { '1' } else { '0' }).collect()
}

/// Run statistics of a binary word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RunProfile {
    /// Number of maximal constant blocks.
    pub runs: usize,
    /// Number of blocks of length one.
    pub unit_runs: usize,
    /// First block has length one.
    pub left_unit: bool,
    /// Last block has length one.
    pub right_unit: bool,
}

impl RunProfile {
    pub fn new(runs: usize, unit_runs: usize, left_unit: bool, right_unit: bool) -> RunProfile {
        RunProfile { runs, unit_runs, left_unit, right_unit }
    }

    pub fn b_left(&self) -> usize {
        self.left_unit as usize
    }

    pub fn b_right(&self) -> usize {
        self.right_unit as usize
    }

    /// Unit runs at either end of the word.
    pub fn external_units(&self) -> usize {
        self.b_left() + self.b_right()
    }
}

/// Run profile of the length-`len` word stored in `bits`. A single-symbol
/// word is one unit run that is both first and last: `(1, 1, true, true)`.
pub fn run_profile(bits: u64, len: usize) -> RunProfile {
    assert!((1..=64).contains(&len));
    let mut runs = 0;
    let mut unit_runs = 0;
    let mut first_len = 0;
    let mut run_len = 0;
    for i in 0..len {
        run_len += 1;
        let ends = i + 1 == len || (bits >> i & 1) != (bits >> (i + 1) & 1);
        if ends {
            runs += 1;
            if run_len == 1 {
                unit_runs += 1;
            }
            if runs == 1 {
                first_len = run_len;
            }
            if i + 1 < len {
                run_len = 0;
            }
        }
    }
    RunProfile { runs, unit_runs, left_unit: first_len == 1, right_unit: run_len == 1 }
}

fn check_word_len(n: usize, what: &str) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("{what} channel needs n >= 2, got {n}")));
    }
    if n > MAX_EXPLICIT_WORD_LEN {
        return Err(Error::CapExceeded { what: "explicit word length", size: n, cap: MAX_EXPLICIT_WORD_LEN });
    }
    Ok(())
}

/// Result of deleting position `i` from a word.
pub fn delete_position(bits: u64, i: usize) -> u64 {
    (bits & ((1u64 << i) - 1)) | ((bits >> (i + 1)) << i)
}

/// Distinct length-`n-1` subsequences of `x`, one per run.
pub fn deletion_neighbors(x: u64, n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for i in 0..n {
        if i == 0 || (x >> i & 1) != (x >> (i - 1) & 1) {
            out.push(delete_position(x, i));
        }
    }
    out.sort_unstable();
    out
}

/// Outputs of the single-grain channel on `x`: `x` itself and every word with
/// position `j` overwritten by position `j + 1`.
pub fn grain_neighbors(x: u64, n: usize) -> Vec<u64> {
    let mut out = vec![x];
    for j in 0..n - 1 {
        let next = x >> (j + 1) & 1;
        out.push((x & !(1u64 << j)) | (next << j));
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn word_channel(n: usize, out_len: usize, nbrs: impl Fn(u64) -> Vec<u64> + Sync) -> Result<Channel> {
    let edges: Vec<(usize, usize)> = (0..1u64 << n)
        .into_par_iter()
        .flat_map_iter(|x| nbrs(x).into_iter().map(move |y| (x as usize, y as usize)))
        .collect();
    Ok(Channel::new(1 << n, 1 << out_len, edges)?.with_labels(Labels::Binary { input_len: n, output_len: out_len }))
}

/// Binary single-deletion channel: inputs `[2]^n`, outputs `[2]^(n-1)`.
pub fn deletion_channel(n: usize) -> Result<Channel> {
    check_word_len(n, "deletion")?;
    word_channel(n, n - 1, |x| deletion_neighbors(x, n))
}

/// Binary single-grain channel on `[2]^n`, identity pattern included.
pub fn grain_channel(n: usize) -> Result<Channel> {
    check_word_len(n, "grain")?;
    word_channel(n, n, |x| grain_neighbors(x, n))
}

/// q-ary channel erasing exactly `a` positions and substituting up to `b` of
/// the rest. An output is an (erased position set, surviving word) pair.
pub fn erasure_substitution_channel(q: usize, n: usize, a: usize, b: usize) -> Result<Channel> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("alphabet size {q} < 2")));
    }
    if a > n {
        return Err(Error::InvalidParameter(format!("cannot erase {a} of {n} symbols")));
    }
    let inputs = (q as u64).checked_pow(n as u32).filter(|&v| v <= MAX_ERASURE_INPUTS).ok_or(Error::CapExceeded {
        what: "erasure channel inputs q^n",
        size: usize::MAX,
        cap: MAX_ERASURE_INPUTS as usize,
    })?;
    let kept = n - a;
    let b = b.min(kept);
    let subsets = gbinom(n as i64, a as i64) as u64;
    let sphere: u64 = (0..=b).map(|i| gbinom(kept as i64, i as i64) as u64 * (q as u64 - 1).pow(i as u32)).sum();
    let degree = subsets * sphere;
    if inputs.saturating_mul(degree) > MAX_ERASURE_EDGES {
        return Err(Error::CapExceeded {
            what: "erasure channel edges",
            size: inputs.saturating_mul(degree) as usize,
            cap: MAX_ERASURE_EDGES as usize,
        });
    }
    let erasures: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() as usize == a).collect();
    let rank: HashMap<u64, usize> = erasures.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let reduced_words = (q as u64).pow(kept as u32);
    let outputs = erasures.len() as u64 * reduced_words;
    // substitution patterns over the kept coordinates: (coordinate, nonzero shift)
    let patterns = substitution_patterns(kept, b, q);
    let edges: Vec<(usize, usize)> = (0..inputs)
        .into_par_iter()
        .flat_map_iter(|x| {
            let digits = to_digits(x, q, n);
            let mut out = Vec::with_capacity(degree as usize);
            for &mask in &erasures {
                let reduced: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 0).map(|i| digits[i]).collect();
                let base = rank[&mask] as u64 * reduced_words;
                for pattern in &patterns {
                    let mut word = reduced.clone();
                    for &(pos, shift) in pattern {
                        word[pos] = (word[pos] + shift) % q;
                    }
                    out.push((x as usize, (base + from_digits(&word, q)) as usize));
                }
            }
            out
        })
        .collect();
    Channel::new(inputs as usize, outputs as usize, edges)
}

fn to_digits(mut x: u64, q: usize, n: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let d = (x % q as u64) as usize;
            x /= q as u64;
            d
        })
        .collect()
}

fn from_digits(digits: &[usize], q: usize) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * q as u64 + d as u64)
}

fn substitution_patterns(len: usize, max_errors: usize, q: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = vec![Vec::new()];
    fn extend(
        start: usize,
        len: usize,
        left: usize,
        q: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if left == 0 {
            return;
        }
        for pos in start..len {
            for shift in 1..q {
                cur.push((pos, shift));
                out.push(cur.clone());
                extend(pos + 1, len, left - 1, q, cur, out);
                cur.pop();
            }
        }
    }
    extend(0, len, max_errors, q, &mut Vec::new(), &mut out);
    out
}

/// Varshamov-Tenengolts code `{x : Σ (i+1)·x_i ≡ a (mod n+1)}`, positions 0-based.
pub fn vt_code(n: usize, a: usize) -> Result<Vec<usize>> {
    if n == 0 || n > 30 {
        return Err(Error::InvalidParameter(format!("VT length {n} not in 1..=30")));
    }
    let modulus = n as u64 + 1;
    let a = a as u64 % modulus;
    let mut code: Vec<usize> =
        (0u64..1 << n).into_par_iter().filter(|&x| vt_syndrome(x, n) % modulus == a).map(|x| x as usize).collect();
    code.sort_unstable();
    Ok(code)
}

fn vt_syndrome(x: u64, _n: usize) -> u64 {
    let mut bits = x;
    let mut s = 0u64;
    while bits != 0 {
        let i = bits.trailing_zeros() as u64;
        s += i + 1;
        bits &= bits - 1;
    }
    s
}

/// Random channel with independent edges of probability `density`; isolated
/// vertices receive one uniformly chosen edge.
pub fn random_channel<R: Rng>(num_inputs: usize, num_outputs: usize, density: f64, rng: &mut R) -> Channel {
    assert!(num_inputs > 0 && num_outputs > 0);
    let mut adj = vec![vec![false; num_outputs]; num_inputs];
    for row in adj.iter_mut() {
        for cell in row.iter_mut() {
            *cell = rng.gen_bool(density.clamp(0.0, 1.0));
        }
    }
    for row in adj.iter_mut() {
        if !row.iter().any(|&e| e) {
            row[rng.gen_range(0..num_outputs)] = true;
        }
    }
    for y in 0..num_outputs {
        if !adj.iter().any(|row| row[y]) {
            let x = rng.gen_range(0..num_inputs);
            adj[x][y] = true;
        }
    }
    let edges = (0..num_inputs).flat_map(|x| {
        let row = &adj[x];
        (0..num_outputs).filter(move |&y| row[y]).map(move |y| (x, y))
    });
    Channel::new(num_inputs, num_outputs, edges.collect::<Vec<_>>()).expect("repaired channel is valid")
}
