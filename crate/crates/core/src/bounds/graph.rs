//! Degree-based lower bounds on the independence number.

use num_traits::{Signed, Zero};

use crate::channel::Graph;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

use super::{check_t, BoundReport, Direction};

/// `(Bt)_x = t_x + Σ_{u ~ x} t_u` with `B` the adjacency matrix plus identity.
fn closed_sums(g: &Graph, t: &[Rational]) -> Vec<Rational> {
    (0..g.num_vertices()).map(|x| g.neighbors(x).fold(t[x].clone(), |acc, u| acc + &t[u])).collect()
}

fn check_graph_t(g: &Graph, t: &[Rational]) -> Result<Vec<Rational>> {
    if g.num_vertices() == 0 {
        return Err(Error::InvalidParameter("graph has no vertices".into()));
    }
    check_t(t, g.num_vertices(), "X")?;
    let bt = closed_sums(g, t);
    if let Some(x) = bt.iter().position(|v| !v.is_positive()) {
        return Err(Error::NotPositive(format!("(Bt)_{x} = 0")));
    }
    Ok(bt)
}

/// `Σ_x t_x / (Bt)_x`.
pub fn caro_wei(g: &Graph, t: &[Rational]) -> Result<BoundReport> {
    let bt = check_graph_t(g, t)?;
    let value = t.iter().zip(&bt).fold(Rational::zero(), |acc, (tx, b)| acc + tx / b);
    Ok(BoundReport::new("caro-wei", Direction::LowerOnP, value))
}

/// `(1ᵀt)^2 / (tᵀBt)`.
pub fn motzkin_straus(g: &Graph, t: &[Rational]) -> Result<BoundReport> {
    let bt = check_graph_t(g, t)?;
    let total = t.iter().fold(Rational::zero(), |acc, v| acc + v);
    let quad = t.iter().zip(&bt).fold(Rational::zero(), |acc, (tx, b)| acc + tx * b);
    Ok(BoundReport::new("motzkin-straus", Direction::LowerOnP, &total * &total / quad))
}

/// `|X| / (1 + average degree)`.
pub fn turan(g: &Graph) -> Result<BoundReport> {
    let m = g.num_vertices() as i64;
    if m == 0 {
        return Err(Error::InvalidParameter("graph has no vertices".into()));
    }
    let value = int(m * m) / int(m + 2 * g.num_edges() as i64);
    Ok(BoundReport::new("turan", Direction::LowerOnP, value))
}
