//! Sphere-packing upper bounds and sphere-covering lower bounds.
//!
//! Parameter vectors `t` live on outputs for the covering-side bounds (mdu,
//! ldu, dsu) and on inputs for the packing-side bounds (mdl, ldl, dsl).

mod deletion;
mod family;
mod graph;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::certificate::{Certificate, CertificateKind};
use crate::channel::{Channel, Side, WeightVec};
use crate::error::{Error, Result};
use crate::rational::{floor, int, int_to_json, serde_pair, Rational};

pub use deletion::*;
pub use family::*;
pub use graph::*;

/// What a bound bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// At least the size of any code (so also at least `p*`-side programs it dominates).
    UpperOnP,
    /// At most the size of the largest code.
    LowerOnP,
    /// At least the size of the smallest output cover.
    UpperOnKappa,
    /// At most the fractional covering number.
    LowerOnKappaStar,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::UpperOnP => "upper-on-p",
            Direction::LowerOnP => "lower-on-p",
            Direction::UpperOnKappa => "upper-on-kappa",
            Direction::LowerOnKappaStar => "lower-on-kappa-star",
        }
    }
}

fn big_json<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    int_to_json(v).serialize(s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub direction: Direction,
    #[serde(with = "serde_pair")]
    pub exact: Rational,
    #[serde(serialize_with = "big_json")]
    pub floor: BigInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
}

impl BoundReport {
    pub fn new(name: impl Into<String>, direction: Direction, exact: Rational) -> BoundReport {
        BoundReport {
            name: name.into(),
            direction,
            floor: floor(&exact),
            exact,
            n: None,
            params: BTreeMap::new(),
            certificate: None,
            iterations: None,
        }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_owned(), value.to_string());
        self
    }

    pub fn with_certificate(mut self, c: Certificate) -> Self {
        self.certificate = Some(c);
        self
    }

    pub fn with_iterations(mut self, k: usize) -> Self {
        self.iterations = Some(k);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn sum(v: &[Rational]) -> Rational {
    crate::rational::sum(v)
}

fn check_t(t: &[Rational], len: usize, side: &str) -> Result<()> {
    if t.len() != len {
        return Err(Error::DimensionMismatch(format!("t has length {}, expected |{side}| = {len}", t.len())));
    }
    if let Some(i) = t.iter().position(|v| v.is_negative()) {
        return Err(Error::NotPositive(format!("t[{i}] = {} < 0", t[i])));
    }
    Ok(())
}

fn positive_products(a: &Channel, t: &[Rational]) -> Result<Vec<Rational>> {
    check_t(t, a.num_outputs(), "Y")?;
    let at = a.cover_products(t);
    if let Some(x) = at.iter().position(|v| !v.is_positive()) {
        return Err(Error::NotPositive(format!("(At)_{x} = 0")));
    }
    Ok(at)
}

/// `1ᵀt / min_x (At)_x` with the scaled cover `t / min(At)`.
pub fn mdu(a: &Channel, t: &[Rational]) -> Result<BoundReport> {
    let at = positive_products(a, t)?;
    let m = at.iter().min().expect("channel has inputs").clone();
    let z: Vec<Rational> = t.iter().map(|v| v / &m).collect();
    Ok(BoundReport::new("mdu", Direction::UpperOnP, sum(t) / m)
        .with_certificate(Certificate::new(CertificateKind::Cover, z)))
}

/// The local-degree map `φ_A(z)_y = z_y / min_{x ∈ N(y)} (Az)_x`.
pub fn local_degree_step(a: &Channel, z: &[Rational]) -> Result<WeightVec> {
    let az = positive_products(a, z)?;
    let values = (0..a.num_outputs())
        .map(|y| {
            let m = a.output_neighbors(y).map(|x| &az[x]).min().expect("outputs are not isolated");
            &z[y] / m
        })
        .collect();
    Ok(WeightVec::new(Side::Output, values))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LduSteps {
    Fixed(usize),
    /// Iterate until `φ(z) = z`, at most `max` times.
    Fixpoint {
        max: usize,
    },
}

/// `1ᵀφ^k(t)`; the iterate itself is the cover certificate.
pub fn ldu_iterated(a: &Channel, t: &[Rational], steps: LduSteps) -> Result<BoundReport> {
    let (limit, stop_at_fixpoint) = match steps {
        LduSteps::Fixed(k) => (k, false),
        LduSteps::Fixpoint { max } => (max, true),
    };
    if limit == 0 {
        return Err(Error::InvalidParameter("ldu needs at least one step".into()));
    }
    let mut z = t.to_vec();
    let mut done = 0;
    while done < limit {
        let next = local_degree_step(a, &z)?.values;
        done += 1;
        let fixed = next == z;
        z = next;
        if stop_at_fixpoint && fixed {
            break;
        }
    }
    let name = match steps {
        LduSteps::Fixed(k) => format!("ldu:{k}"),
        LduSteps::Fixpoint { .. } => "ldu:fix".to_owned(),
    };
    Ok(BoundReport::new(name, Direction::UpperOnP, sum(&z))
        .with_iterations(done)
        .with_certificate(Certificate::new(CertificateKind::Cover, z)))
}

/// Degree threshold `d` with `Σ_{D_x < d} D_x <= 1ᵀt <= Σ_{D_x <= d} D_x` for
/// `D = At`, together with `|X_-|` and `Σ_{X_-} D`.
fn dsu_threshold_of(at: &[Rational], total: &Rational) -> (Rational, usize, Rational) {
    let mut sorted: Vec<&Rational> = at.iter().collect();
    sorted.sort();
    let mut below = Rational::zero();
    let mut count = 0;
    let mut i = 0;
    while i < sorted.len() {
        let d = sorted[i];
        let j = i + sorted[i..].iter().take_while(|v| **v == d).count();
        let group = Rational::from_integer(BigInt::from(j - i)) * d;
        if &below + &group >= *total {
            return (d.clone(), count, below);
        }
        below += group;
        count = j;
        i = j;
    }
    unreachable!("Σ (At)_x >= 1ᵀt whenever every output has a neighbor")
}

/// Degree-sequence bound `|X_-| + (1ᵀt - Σ_{X_-} (At)_x) / d` with the dual
/// cover `z_y = t_y (1/d + Σ_{x ∈ N(y)} max(1/(At)_x - 1/d, 0))` of equal weight.
pub fn dsu(a: &Channel, t: &[Rational]) -> Result<BoundReport> {
    let at = positive_products(a, t)?;
    let total = sum(t);
    let (d, count, below) = dsu_threshold_of(&at, &total);
    let value = int(count as i64) + (&total - below) / &d;
    let z = dsu_cover_for(a, t, &at, &d);
    debug_assert_eq!(sum(&z), value);
    Ok(BoundReport::new("dsu", Direction::UpperOnP, value)
        .with_param("d", &d)
        .with_certificate(Certificate::new(CertificateKind::Cover, z)))
}

fn dsu_cover_for(a: &Channel, t: &[Rational], at: &[Rational], d: &Rational) -> Vec<Rational> {
    let inv_d = Rational::one() / d;
    let excess: Vec<Rational> = at
        .iter()
        .map(|v| {
            let e = Rational::one() / v - &inv_d;
            if e.is_positive() {
                e
            } else {
                Rational::zero()
            }
        })
        .collect();
    (0..a.num_outputs())
        .map(|y| &t[y] * (a.output_neighbors(y).fold(inv_d.clone(), |acc, x| acc + &excess[x])))
        .collect()
}

/// The dual cover of [`dsu`] and whether `φ_A(t) <= z` holds componentwise.
pub fn dsu_dominance(a: &Channel, t: &[Rational]) -> Result<(WeightVec, bool)> {
    let at = positive_products(a, t)?;
    let (d, _, _) = dsu_threshold_of(&at, &sum(t));
    let z = WeightVec::new(Side::Output, dsu_cover_for(a, t, &at, &d));
    let phi = local_degree_step(a, t)?;
    let dominated = phi.le(&z);
    Ok((z, dominated))
}

/// `(|X| - |S|)/d + |S|` for `S = {x : |N(x)| < d}`, valid for any `d > 0`
/// at `t = 1`.
pub fn dsu_threshold(a: &Channel, d: &Rational) -> Result<BoundReport> {
    if !d.is_positive() {
        return Err(Error::NotPositive(format!("threshold d = {d}")));
    }
    let small = (0..a.num_inputs()).filter(|&x| int(a.input_degree(x) as i64) < *d).count();
    Ok(threshold_report(a.num_inputs().into(), small.into(), d))
}

fn threshold_report(nx: BigInt, small: BigInt, d: &Rational) -> BoundReport {
    let value = Rational::from_integer(&nx - &small) / d + Rational::from_integer(small);
    BoundReport::new("dsu-threshold", Direction::UpperOnP, value).with_param("d", d)
}

/// `κ(A) <= |X| - |E|/|Y| + 1`.
pub fn edge_only_upper(a: &Channel) -> BoundReport {
    let value = int(a.num_inputs() as i64) - Rational::new(a.num_edges().into(), a.num_outputs().into()) + int(1);
    BoundReport::new("edge-upper", Direction::UpperOnKappa, value)
}

/// A channel meeting [`edge_only_upper`] with equality: `s` inputs whose
/// neighborhoods partition `Y`, every other input adjacent to all of `Y`.
pub fn edge_only_upper_tight(num_inputs: usize, num_outputs: usize, s: usize) -> Result<Channel> {
    if s == 0 || s > num_inputs || s > num_outputs {
        return Err(Error::InvalidParameter(format!("need 1 <= s <= min(|X|, |Y|), got s = {s}")));
    }
    let partition = (0..num_outputs).map(|y| (y % s, y));
    let full = (s..num_inputs).flat_map(|x| (0..num_outputs).map(move |y| (x, y)));
    Channel::new(num_inputs, num_outputs, partition.chain(full))
}

/// `p(A) >= |X| + |Y| - |E|`.
pub fn edge_only_lower(a: &Channel) -> BoundReport {
    let value = int(a.num_inputs() as i64 + a.num_outputs() as i64 - a.num_edges() as i64);
    BoundReport::new("edge-lower", Direction::LowerOnP, value)
}

/// A channel meeting [`edge_only_lower`] with equality: `r` outputs whose
/// neighborhoods partition `X`, every other output of degree one.
pub fn edge_only_lower_tight(num_inputs: usize, num_outputs: usize, r: usize) -> Result<Channel> {
    if r == 0 || r > num_inputs || r > num_outputs {
        return Err(Error::InvalidParameter(format!("need 1 <= r <= min(|X|, |Y|), got r = {r}")));
    }
    let partition = (0..num_inputs).map(|x| (x, x % r));
    let pendant = (r..num_outputs).map(|y| ((y - r) % num_inputs, y));
    Channel::new(num_inputs, num_outputs, partition.chain(pendant))
}

/// `|X||Y|/|E|`, the exact `p*` of an input- and output-regular channel.
pub fn regular_value(a: &Channel) -> Option<Rational> {
    (a.is_input_regular() && a.is_output_regular())
        .then(|| Rational::new((a.num_inputs() * a.num_outputs()).into(), a.num_edges().into()))
}

fn packing_loads_checked(a: &Channel, t: &[Rational]) -> Result<Vec<Rational>> {
    check_t(t, a.num_inputs(), "X")?;
    if !sum(t).is_positive() {
        return Err(Error::NotPositive("1ᵀt = 0".into()));
    }
    Ok(a.packing_loads(t))
}

/// `1ᵀt / max_y (Aᵀt)_y` with the packing `t / max(Aᵀt)`.
pub fn mdl(a: &Channel, t: &[Rational]) -> Result<BoundReport> {
    let loads = packing_loads_checked(a, t)?;
    let m = loads.iter().max().expect("channel has outputs").clone();
    let w: Vec<Rational> = t.iter().map(|v| v / &m).collect();
    Ok(BoundReport::new("mdl", Direction::LowerOnKappaStar, sum(t) / m)
        .with_certificate(Certificate::new(CertificateKind::Packing, w)))
}

/// `Σ_x t_x / max_{y ∈ N(x)} (Aᵀt)_y`; the summands form a packing.
pub fn ldl(a: &Channel, t: &[Rational]) -> Result<BoundReport> {
    let loads = packing_loads_checked(a, t)?;
    let w: Vec<Rational> = (0..a.num_inputs())
        .map(|x| {
            if t[x].is_zero() {
                return Rational::zero();
            }
            let m = a.input_neighbors(x).map(|y| &loads[y]).max().expect("inputs are not isolated");
            &t[x] / m
        })
        .collect();
    Ok(BoundReport::new("ldl", Direction::LowerOnKappaStar, sum(&w))
        .with_certificate(Certificate::new(CertificateKind::Packing, w)))
}

/// `min 1ᵀz  s.t.  0 <= z <= 1,  Σ_y (Aᵀt)_y z_y >= 1ᵀt`, filled greedily by
/// descending `(Aᵀt)_y`. The certificate is a packing of at least this weight.
pub fn dsl(a: &Channel, t: &[Rational]) -> Result<BoundReport> {
    let loads = packing_loads_checked(a, t)?;
    let total = sum(t);
    let mut order: Vec<usize> = (0..a.num_outputs()).collect();
    order.sort_by(|&i, &j| loads[j].cmp(&loads[i]).then(i.cmp(&j)));
    let mut acc = Rational::zero();
    let mut value = Rational::zero();
    let mut d = loads[order[0]].clone();
    for &y in &order {
        d = loads[y].clone();
        if &acc + &loads[y] >= total {
            value += (&total - &acc) / &loads[y];
            break;
        }
        acc += &loads[y];
        value += int(1);
    }
    // w_x = t_x (1/d - Σ_{y ∈ N(x)} max(0, 1/d - 1/L_y)), clipped at zero.
    let inv_d = Rational::one() / &d;
    let w: Vec<Rational> = (0..a.num_inputs())
        .map(|x| {
            let cut = a.input_neighbors(x).fold(Rational::zero(), |s, y| {
                let e = &inv_d - Rational::one() / &loads[y];
                if e.is_positive() {
                    s + e
                } else {
                    s
                }
            });
            let v = &t[x] * (&inv_d - cut);
            if v.is_positive() {
                v
            } else {
                Rational::zero()
            }
        })
        .collect();
    Ok(BoundReport::new("dsl", Direction::LowerOnKappaStar, value)
        .with_param("d", &d)
        .with_certificate(Certificate::new(CertificateKind::Packing, w)))
}
